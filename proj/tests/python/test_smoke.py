import pytest

latrep = pytest.importorskip("latrep")


def test_valuation():
    assert latrep.valuation("9/2", 3) == 2
    assert latrep.valuation("5", 3) == 0


def test_snf_certificate():
    out = latrep.snf([["2", "0"], ["0", "3"]])
    assert out["diag"] == ["1", "6"]
    assert len(out["left"]) == 2 and len(out["right"]) == 2


def test_rref_modp():
    out = latrep.rref_modp([["1", "2"], ["2", "4"]], 5)
    assert out["rank"] == 1
    assert len(out["kernel"]) == 1


def test_dual_lattice():
    dual = latrep.dual_lattice(
        [["1", "0"], ["0", "1"]], [["1", "0"], ["0", "9"]], "symmetric", 3
    )
    assert dual == [["1", "0"], ["0", "1/9"]]


def test_discriminant_valuations():
    vals = latrep.discriminant_valuations(
        [["1", "0"], ["0", "1"]], [["2", "-1"], ["-1", "2"]], "symmetric", 3
    )
    assert vals == [1]


def test_verify_craig():
    report = latrep.verify_craig(6, 3)
    assert report["pq_order_valuation"] == 1
    assert report["pq_cyclic"] is True
    assert report["perfect_symmetric_form_exists"] is False
    assert report["q_equals_p"] is False


def test_is_well_rounded():
    evidence = latrep.is_well_rounded(
        [[["1", "1"], ["0", "1"]], [["1", "0"], ["1", "1"]]], 5
    )
    assert evidence["well_rounded"] is True
    assert evidence["span_dim"] == 4


def test_invariant_forms():
    forms = latrep.invariant_forms(
        [[["1", "1"], ["0", "1"]], [["1", "0"], ["1", "1"]]], "alternating"
    )
    assert forms == [[["0", "1"], ["-1", "0"]]]


def test_composite_demo():
    out = latrep.composite_demo(2, 3, 3)
    assert out["two_d"] == 2
    assert out["report"]["t_exponent"] == 1
    assert out["report"]["e_perfect"] is False


def test_input_errors():
    with pytest.raises(ValueError):
        latrep.valuation("0", 3)
    with pytest.raises(ValueError):
        latrep.snf([["1/2"]])
