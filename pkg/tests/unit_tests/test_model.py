import random

import pytest

from cp_verifier.model.errors import SortError, UnboundVar
from cp_verifier.model.evaluate import eval_expr
from cp_verifier.model.expr import (
    Add,
    Eq,
    If,
    Lt,
    Max,
    Min,
    NoneOf,
    RecordMake,
    RecordWith,
    SetContains,
    SetInsert,
    SetRemove,
    Some,
    Sub,
    Var,
    all_routes,
    free_vars,
    get,
    has_route,
    is_none,
    lit,
    map_route,
    nat,
    string_literals,
    substitute,
)
from cp_verifier.model.sampling import ExprGenerator, sample_value
from cp_verifier.model.sorts import (
    BOOL,
    INT,
    STRING_SET,
    BitVecSort,
    EnumSort,
    OptionSort,
    RecordSort,
    record_sort,
)
from cp_verifier.model.typecheck import sort_check
from cp_verifier.model.values import (
    FALSE,
    TRUE,
    bv_value,
    conforms,
    enum_value,
    int_value,
    none_value,
    record_value,
    render_value,
    set_value,
    some_value,
    strings_in,
)

ROUTE = record_sort(lp=BitVecSort(32), len=INT, tag=BOOL)
OPT = OptionSort(ROUTE)


def route(lp=100, length=1, tag=True):
    return some_value(record_value(ROUTE, {"lp": bv_value(lp, 32), "len": int_value(length), "tag": TRUE if tag else FALSE}))


class TestSorts:
    def test_bitvec_width_must_be_positive(self):
        with pytest.raises(ValueError):
            BitVecSort(0)

    def test_enum_labels_are_unique_identifiers(self):
        with pytest.raises(ValueError):
            EnumSort(("a", "a"))
        with pytest.raises(ValueError):
            EnumSort(("not a label",))

    def test_record_rejects_duplicate_fields(self):
        with pytest.raises(ValueError):
            RecordSort((("x", INT), ("x", BOOL)))

    def test_record_sort_keeps_keyword_order(self):
        assert ROUTE.names == ("lp", "len", "tag")
        assert ROUTE.field("len") == INT
        assert ROUTE.index("tag") == 2


class TestValues:
    def test_render_matches_route_tables(self):
        assert render_value(route()) == "⟨100,1,true⟩"
        assert render_value(none_value(ROUTE)) == "∅"
        assert render_value(set_value(["b", "a"])) == "{a,b}"

    def test_bitvectors_wrap(self):
        assert bv_value(2**32 + 5, 32).data == 5

    def test_int_values_are_nonnegative(self):
        with pytest.raises(ValueError):
            int_value(-1)

    def test_enum_value_checks_label(self):
        sort = EnumSort(("egp", "igp"))
        assert enum_value(sort, "igp").data == "igp"
        with pytest.raises(ValueError):
            enum_value(sort, "bgp")

    def test_record_value_needs_every_field(self):
        with pytest.raises(ValueError):
            record_value(ROUTE, {"lp": bv_value(1, 32)})

    def test_conforms(self):
        assert conforms(route(), OPT)
        assert not conforms(route(), ROUTE)

    def test_strings_in_nested_sets(self):
        sort = OptionSort(record_sort(comms=STRING_SET))
        value = some_value(record_value(sort.inner, {"comms": set_value(["x", "y"])}))
        assert strings_in(value) == {"x", "y"}


class TestEvaluate:
    def test_int_subtraction_saturates(self):
        assert eval_expr(Sub(nat(2), nat(5)), {}).data == 0

    def test_bitvector_arithmetic_wraps(self):
        one = lit(bv_value(1, 8))
        assert eval_expr(Sub(lit(bv_value(0, 8)), one), {}).data == 255
        assert eval_expr(Add(lit(bv_value(255, 8)), one), {}).data == 0

    def test_min_max(self):
        assert eval_expr(Min(nat(3), nat(2)), {}).data == 2
        assert eval_expr(Max(nat(3), nat(2)), {}).data == 3

    def test_record_field_update(self):
        r = Var("r")
        out = eval_expr(RecordWith(r, "len", Add(get(r, "len"), nat(1))), {"r": route().unwrap()})
        assert out.field("len").data == 2
        assert out.field("lp").data == 100

    def test_option_helpers(self):
        env = {"s": route(), "e": none_value(ROUTE)}
        assert eval_expr(is_none(Var("e")), env) == TRUE
        assert eval_expr(has_route(Var("s"), lambda x: get(x, "tag")), env) == TRUE
        assert eval_expr(has_route(Var("e"), lambda x: get(x, "tag")), env) == FALSE
        assert eval_expr(all_routes(Var("e"), lambda x: get(x, "tag")), env) == TRUE

    def test_map_route_keeps_empty(self):
        bumped = map_route(Var("s"), ROUTE, lambda x: Some(RecordWith(x, "len", nat(9))))
        assert eval_expr(bumped, {"s": none_value(ROUTE)}).is_none

    def test_string_sets(self):
        comms = Var("c")
        env = {"c": set_value(["a"])}
        assert eval_expr(SetContains(comms, "a"), env) == TRUE
        assert eval_expr(SetInsert(comms, "b"), env).data == {"a", "b"}
        assert eval_expr(SetRemove(comms, "a"), env).data == frozenset()

    def test_unbound_variable(self):
        with pytest.raises(UnboundVar):
            eval_expr(Var("missing"), {})


class TestExprUtilities:
    def test_free_vars_skip_case_binder(self):
        e = has_route(Var("s"), lambda r: Eq(get(r, "len"), Var("k")))
        assert free_vars(e) == {"s", "k"}

    def test_substitute_respects_binder(self):
        e = has_route(Var("s"), lambda r: Eq(get(r, "len"), nat(1)))
        out = substitute(e, {"s": lit(route()), "r": nat(7)})
        assert free_vars(out) == frozenset()
        assert eval_expr(out, {}) == TRUE

    def test_string_literals(self):
        e = If(SetContains(Var("c"), "x"), SetInsert(Var("c"), "y"), Var("c"))
        assert string_literals(e) == {"x", "y"}


class TestSortCheck:
    def test_route_predicate(self):
        pred = has_route(Var("s"), lambda r: Lt(get(r, "len"), nat(3)))
        assert sort_check(pred, {"s": OPT}) == BOOL

    def test_record_make(self):
        assert sort_check(RecordMake((("a", nat(1)),)), {}) == record_sort(a=INT)

    def test_mixed_numeric_sorts_are_rejected(self):
        with pytest.raises(SortError):
            sort_check(Add(nat(1), lit(bv_value(1, 32))), {})

    def test_missing_field_reports_path(self):
        with pytest.raises(SortError) as info:
            sort_check(has_route(Var("s"), lambda r: get(r, "med")), {"s": OPT})
        assert "get" in info.value.path

    def test_if_branches_must_agree(self):
        with pytest.raises(SortError):
            sort_check(If(TRUE_LIT, nat(1), lit(TRUE)), {})

    def test_none_of(self):
        assert sort_check(NoneOf(ROUTE), {}) == OPT

    def test_unbound(self):
        with pytest.raises(UnboundVar):
            sort_check(Var("x"), {})


TRUE_LIT = lit(TRUE)


def test_generated_expressions_are_well_sorted_and_evaluate():
    rng = random.Random(3)
    env = {"s": OPT, "n": INT}
    gen = ExprGenerator(env, rng, ["a", "b"])
    for _ in range(200):
        for sort in (BOOL, OPT, INT):
            e = gen.expr(sort, depth=3)
            assert sort_check(e, env) == sort
            values = {name: sample_value(s, rng, ["a", "b"]) for name, s in env.items()}
            assert conforms(eval_expr(e, values), sort)
