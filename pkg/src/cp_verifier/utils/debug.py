"""
Debug dumps of emitted solver scripts.
"""

import logging
import os
from pathlib import Path
from typing import Optional, Union

logger = logging.getLogger(__name__)


def resolve_dump_dir(dump_dir: Optional[Union[str, Path]] = None) -> Optional[Path]:
    """Return the dump directory from the argument or ``CPV_DUMP_SMT``, if any."""
    value = dump_dir if dump_dir is not None else os.getenv("CPV_DUMP_SMT", "")
    return Path(value) if str(value) else None


def dump_script(script: str, label: str, dump_dir: Optional[Union[str, Path]] = None) -> Optional[str]:
    """
    Write an SMT-LIB script to ``<dump_dir>/<label>.smt2``.

    The file holds the script exactly as sent to the solver so reruns can
    be compared byte for byte.

    Args:
        script: The rendered script
        label: Query label, e.g. ``v.inductive`` or ``monolithic``
        dump_dir: Target directory (defaults to CPV_DUMP_SMT)

    Returns:
        Path to the dumped file if dumping is enabled, None otherwise
    """
    target = resolve_dump_dir(dump_dir)
    if target is None:
        return None
    target.mkdir(parents=True, exist_ok=True)
    path = target / f"{label}.smt2"
    path.write_text(script)
    logger.debug("📝 %s script saved to %s", label, path)
    return str(path)
