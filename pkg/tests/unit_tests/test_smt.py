import subprocess
from unittest.mock import patch

import pytest

from cp_verifier.model.errors import EmptyAlphabet, MalformedModel, SolverFailure
from cp_verifier.model.expr import Eq, SetContains, SetInsert, Var, get, has_route, lit, nat
from cp_verifier.model.sorts import BOOL, INT, STRING_SET, BitVecSort, EnumSort, OptionSort, record_sort
from cp_verifier.model.values import TRUE, bv_value, enum_value, int_value, record_value, set_value, some_value
from cp_verifier.smt.client import SolverClient
from cp_verifier.smt.encoder import Alphabet, SmtEncoder
from cp_verifier.smt.model import decode_value, parse_model, parse_response
from cp_verifier.smt.schemas import VerdictKind
from cp_verifier.smt.sexpr import StringAtom, parse_all, render, smt_symbol

ROUTE = OptionSort(record_sort(lp=BitVecSort(32), len=INT, tag=BOOL))


class TestSexpr:
    def test_quoted_symbols_and_strings(self):
        items = parse_all('(a |cpv.in.u| "say ""hi""") ; comment\n b')
        assert items == [["a", "cpv.in.u", StringAtom('say "hi"')], "b"]

    def test_render(self):
        assert render(["=", "x", ["_", "bv1", "8"]]) == "(= x (_ bv1 8))"

    def test_unbalanced(self):
        with pytest.raises(MalformedModel):
            parse_all("(a (b)")
        with pytest.raises(MalformedModel):
            parse_all("a)")

    def test_symbol_quoting(self):
        assert smt_symbol("cpv.t") == "cpv.t"
        assert smt_symbol("has space") == "|has space|"
        with pytest.raises(ValueError):
            smt_symbol("bad|name")


class TestAlphabet:
    def test_bit_order(self):
        alphabet = Alphabet.of(["PEER", "BTE", "CUST"])
        assert alphabet.strings == ("BTE", "CUST", "PEER")
        assert alphabet.bit("BTE") == 2
        assert alphabet.mask(["PEER"]) == "#b001"
        assert alphabet.decode("110") == {"BTE", "CUST"}

    def test_unknown_string(self):
        with pytest.raises(KeyError):
            Alphabet.of(["a"]).mask(["b"])


class TestEncoder:
    def test_datatype_names_follow_first_use(self):
        enc = SmtEncoder()
        assert enc.sort_name(ROUTE) == "Option0"
        assert enc.sort_name(ROUTE.inner) == "Record0"
        assert enc.sort_name(EnumSort(("a", "b"))) == "Enum0"
        assert enc.constructor(ROUTE, "some") == "Option0_some"
        assert enc.datatypes[0].name == "Record0"

    def test_values(self):
        enc = SmtEncoder(Alphabet.of(["x", "y"]))
        route = some_value(record_value(ROUTE.inner, {"lp": bv_value(100, 32), "len": int_value(1), "tag": TRUE}))
        assert enc.encode_value(route) == "(Option0_some (Record0_mk (_ bv100 32) 1 true))"
        assert enc.encode_value(set_value(["y"])) == "#b01"
        sort = EnumSort(("egp", "igp"))
        assert enc.encode_value(enum_value(sort, "igp")) == "Enum0_igp"

    def test_empty_alphabet(self):
        with pytest.raises(EmptyAlphabet):
            SmtEncoder().sort_name(STRING_SET)

    def test_int_declarations_are_nonnegative(self):
        enc = SmtEncoder()
        enc.declare("n", INT)
        enc.declare("r", ROUTE)
        assert enc.assumptions[0] == "(<= 0 n)"
        assert "(=> ((_ is Option0_some) r) (<= 0 (Record0_len (Option0_value r))))" in enc.assumptions

    def test_set_operations(self):
        enc = SmtEncoder(Alphabet.of(["a", "b"]))
        c = enc.declare("c", STRING_SET)
        assert enc.encode_expr(SetContains(Var("c"), "a"), {"c": c}).text == "(= ((_ extract 1 1) c) #b1)"
        assert enc.encode_expr(SetInsert(Var("c"), "b"), {"c": c}).text == "(bvor c #b01)"

    def test_script_layout(self):
        enc = SmtEncoder()
        r = enc.declare("cpv.in.u", ROUTE)
        t = enc.declare("cpv.t", INT)
        merged = enc.define("cpv.merge.v.0", r)
        enc.assume(enc.encode_expr(has_route(Var("r"), lambda x: get(x, "tag")), {"r": merged}))
        goal = enc.encode_expr(Eq(Var("t"), nat(0)), {"t": t})
        lines = enc.script(goal, timeout_ms=5000).splitlines()
        assert lines[:3] == ["(set-option :produce-models true)", "(set-option :timeout 5000)", "(set-logic ALL)"]
        assert lines[3].startswith("(declare-datatypes ((Record0 0))")
        assert lines[4].startswith("(declare-datatypes ((Option0 0))")
        assert lines[5] == "(declare-fun cpv.in.u () Option0)"
        assert lines[6] == "(declare-fun cpv.t () Int)"
        assert lines[7] == "(declare-fun cpv.merge.v.0 () Option0)"
        assert lines[8] == "(assert (= cpv.merge.v.0 cpv.in.u))"
        assert lines[-5] == "(assert (not (= cpv.t 0)))"
        assert lines[-4:] == ["(check-sat)", "(get-value (cpv.in.u cpv.t))", "(get-info :reason-unknown)", "(exit)"]

    def test_no_timeout_option_for_other_solvers(self):
        enc = SmtEncoder()
        goal = enc.encode_expr(lit(TRUE), {})
        assert ":timeout" not in enc.script(goal)


class TestModelParsing:
    def encoder(self):
        enc = SmtEncoder(Alphabet.of(["a", "b"]))
        enc.declare("r", ROUTE)
        enc.declare("cpv.t", INT)
        enc.declare("c", STRING_SET)
        return enc

    def test_sat_model(self):
        output = (
            "sat\n"
            "((r (Option0_some (Record0_mk #x00000064 2 true)))\n"
            " (cpv.t 3)\n"
            " (c #b10))\n"
            '(:reason-unknown "")\n'
        )
        values = parse_model(output, self.encoder())
        assert str(values["r"]) == "⟨100,2,true⟩"
        assert values["cpv.t"].data == 3
        assert values["c"].data == {"a"}

    def test_unsat_ignores_later_errors(self):
        response = parse_response('unsat\n(error "model is not available")\n(:reason-unknown "")\n')
        assert response.verdict == "unsat"

    def test_unknown_reason(self):
        response = parse_response('unknown\n(error "no model")\n(:reason-unknown "canceled")\n')
        assert response.verdict == "unknown"
        assert response.reason == "canceled"

    def test_rejected_script(self):
        with pytest.raises(SolverFailure):
            parse_response('(error "line 3: unknown constant x")\nunknown\n')

    def test_no_verdict(self):
        with pytest.raises(SolverFailure):
            parse_response("")

    def test_missing_symbol(self):
        with pytest.raises(MalformedModel):
            parse_model("sat\n((r Option0_none))\n", self.encoder())

    def test_bitvector_notations(self):
        enc = SmtEncoder()
        sort = BitVecSort(8)
        assert decode_value(["_", "bv200", "8"], sort, enc).data == 200
        assert decode_value("#b00000011", sort, enc).data == 3
        with pytest.raises(MalformedModel):
            decode_value("#b1", sort, enc)

    def test_negative_int_rejected(self):
        with pytest.raises(MalformedModel):
            decode_value(["-", "1"], INT, SmtEncoder())


class TestClient:
    def completed(self, stdout, returncode=0, stderr=""):
        return subprocess.CompletedProcess(args=["z3"], returncode=returncode, stdout=stdout, stderr=stderr)

    def goal(self):
        enc = SmtEncoder()
        t = enc.declare("cpv.t", INT)
        return enc, enc.encode_expr(Eq(Var("t"), nat(0)), {"t": t})

    def test_valid(self):
        client = SolverClient("/usr/bin/z3")
        enc, goal = self.goal()
        with patch("cp_verifier.smt.client.subprocess.run", return_value=self.completed("unsat\n")) as run:
            verdict = client.check_validity(enc, goal, "v.initial")
        assert verdict.kind == VerdictKind.VALID
        script = run.call_args.kwargs["input"]
        assert "(set-option :timeout 30000)" in script

    def test_counterexample(self):
        client = SolverClient("z3")
        enc, goal = self.goal()
        with patch("cp_verifier.smt.client.subprocess.run", return_value=self.completed("sat\n((cpv.t 4))\n")):
            verdict = client.check_validity(enc, goal)
        assert verdict.is_counterexample
        assert verdict.assignment["cpv.t"].data == 4

    def test_timeout_is_unknown(self):
        client = SolverClient("z3", timeout=0.1)
        enc, goal = self.goal()
        with patch("cp_verifier.smt.client.subprocess.run", side_effect=subprocess.TimeoutExpired("z3", 5.1)):
            verdict = client.check_validity(enc, goal)
        assert verdict.kind == VerdictKind.UNKNOWN
        assert verdict.timed_out

    def test_crash_is_failure(self):
        client = SolverClient("cvc5", args=["--lang", "smt2"])
        enc, goal = self.goal()
        with patch("cp_verifier.smt.client.subprocess.run", return_value=self.completed("", returncode=139, stderr="segfault")):
            verdict = client.check_validity(enc, goal)
        assert verdict.kind == VerdictKind.FAILURE
        assert "139" in verdict.detail

    def test_missing_executable(self):
        client = SolverClient("/nonexistent/solver")
        enc, goal = self.goal()
        with patch("cp_verifier.smt.client.subprocess.run", side_effect=FileNotFoundError("no such file")):
            verdict = client.check_validity(enc, goal)
        assert verdict.kind == VerdictKind.FAILURE

    def test_scripts_are_dumped(self, tmp_path):
        client = SolverClient("z3", dump_dir=tmp_path)
        enc, goal = self.goal()
        with patch("cp_verifier.smt.client.subprocess.run", return_value=self.completed("unsat\n")):
            client.check_validity(enc, goal, "e.safety")
        assert (tmp_path / "e.safety.smt2").read_text().startswith("(set-option :produce-models true)")
