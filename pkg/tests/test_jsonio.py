from fractions import Fraction as F

import pytest

from normext.exactreal import RationalInterval
from normext.functionals import DualVector, FunctionalPresentation
from normext.jsonio import (
    SchemaError,
    fmt_blockvec,
    fmt_dualvector,
    fmt_finvec,
    fmt_functional,
    fmt_interval,
    fmt_rational,
    parse_blockvec,
    parse_extension_request,
    parse_finvec,
    parse_interval,
    parse_oracle_instance,
    parse_rational,
    parse_reduction_request,
)
from normext.oracles import (
    CCInstance,
    LLPOInstance,
    SEPInstance,
    cc_solve,
    llpo_solve,
    sep_solve,
    wkl_path,
)
from normext.spaces import BlockVec, FinVec


class TestRationals:
    def test_roundtrip(self):
        for v in (F(3), F(-5, 4), F(0), F(7, 2)):
            assert parse_rational(fmt_rational(v)) == v

    def test_integers_stay_plain(self):
        assert fmt_rational(F(3)) == "3"
        assert fmt_rational(F(1, 2)) == "1/2"

    def test_accepts_ints(self):
        assert parse_rational(7) == 7

    def test_rejects_floats_and_junk(self):
        with pytest.raises(SchemaError):
            parse_rational("0.5x")
        with pytest.raises(SchemaError):
            parse_rational(True)
        with pytest.raises(SchemaError):
            parse_rational("1/0")


def test_interval_roundtrip():
    iv = RationalInterval(F(-1, 3), F(2))
    assert parse_interval(fmt_interval(iv)) == iv
    with pytest.raises(SchemaError):
        parse_interval([1])


def test_finvec_roundtrip():
    v = FinVec({0: F(1, 2), 7: -3})
    assert parse_finvec(fmt_finvec(v)) == v
    with pytest.raises(SchemaError):
        parse_finvec([1, 2])


def test_blockvec_roundtrip():
    v = BlockVec({0: (F(1, 3), F(-2)), 4: (0, F(5, 7))})
    assert parse_blockvec(fmt_blockvec(v)) == v
    with pytest.raises(SchemaError):
        parse_blockvec({"0": [1]})


def test_functional_and_dual_roundtrip():
    f = FunctionalPresentation({0: F(1, 2), 3: -1}, F(3, 2))
    obj = fmt_functional(f)
    assert obj == {"values": {"0": "1/2", "3": "-1"}, "bound": "3/2"}
    w = DualVector({0: 1, 1: F(-1, 2)}, bound=1)
    assert fmt_dualvector(w)["entries"]["1"] == "-1/2"


class TestOracleInstances:
    def test_llpo(self):
        inst = parse_oracle_instance(
            {"type": "llpo", "p0": {"prefix": [0, 0], "zeroTail": True},
             "p1": {"prefix": [0, 1], "zeroTail": True}}
        )
        assert isinstance(inst, LLPOInstance)
        assert llpo_solve(inst) == 0

    def test_cc(self):
        inst = parse_oracle_instance(
            {"type": "cc",
             "lower": {"values": ["0", "1/4"], "stab": 1},
             "upper": {"values": ["1", "3/4"], "stab": 1}}
        )
        assert isinstance(inst, CCInstance)
        assert cc_solve(inst) == F(1, 2)

    def test_sep(self):
        inst = parse_oracle_instance({"type": "sep", "p": [0, 2], "q": [1]})
        assert isinstance(inst, SEPInstance)
        assert sep_solve(inst) == {0, 2}

    def test_wkl(self):
        nodes = [""]
        for depth in range(1, 5):
            nodes += ["1" * depth]
            nodes += ["1" * (depth - 1) + "0"] if depth < 3 else []
        inst = parse_oracle_instance(
            {"type": "wkl", "nodes": nodes, "viability": [[1, 4], [2, 4]]}
        )
        assert wkl_path(inst, 2) == "11"

    def test_wkl_depth_cap_enforced(self):
        inst = parse_oracle_instance({"type": "wkl", "nodes": ["", "0"], "viability": []})
        with pytest.raises(SchemaError):
            wkl_path(inst, 5)

    def test_unknown_type(self):
        with pytest.raises(SchemaError):
            parse_oracle_instance({"type": "mystery"})

    def test_empty_interval_stage_rejected(self):
        with pytest.raises(SchemaError):
            parse_oracle_instance(
                {"type": "cc",
                 "lower": {"values": ["3/4"], "stab": 0},
                 "upper": {"values": ["1/4"], "stab": 0}}
            )


class TestRequests:
    def test_extension_request_defaults(self):
        req = parse_extension_request(
            {"space": "l1", "generators": [{"0": "1"}], "values": {"0": "1"},
             "bound": "1"}
        )
        assert req["chooser"] == "mid" and req["precision"] == 20
        assert req["generators"][0] == FinVec({0: 1})

    def test_extension_request_rejects_unknown_space(self):
        with pytest.raises(SchemaError):
            parse_extension_request({"space": "l2", "generators": [{"0": "1"}]})

    def test_extension_request_rejects_bad_chooser(self):
        with pytest.raises(SchemaError):
            parse_extension_request(
                {"space": "l1", "generators": [{"0": "1"}], "values": {},
                 "bound": "1", "chooser": "median"}
            )

    def test_reduction_request(self):
        req = parse_reduction_request(
            {"reduction": "sep-to-hbt", "instance": {"type": "sep", "p": [0], "q": []},
             "fuel": 4}
        )
        assert req["fuel"] == 4
        assert isinstance(req["instance"], SEPInstance)

    def test_reduction_request_llpo(self):
        req = parse_reduction_request(
            {"reduction": "llpo-to-hbt2d", "instance": {"r": "-1/2"}}
        )
        assert req["r"] == F(-1, 2)

    def test_reduction_type_mismatch(self):
        with pytest.raises(SchemaError):
            parse_reduction_request(
                {"reduction": "cc-to-hbt1", "instance": {"type": "sep", "p": [], "q": []}}
            )

    def test_unknown_reduction(self):
        with pytest.raises(SchemaError):
            parse_reduction_request({"reduction": "wkl-to-hbt"})
