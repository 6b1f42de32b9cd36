"""Schema validation: good documents round-trip, bad ones point at the field."""

import pytest
from hypothesis import given, strategies as st

from wittpoint.forms import BilinearForm
from wittpoint.jsonio import (
    SchemaError,
    block_from_json,
    complex_from_json,
    diamond_from_json,
    fp_class_from_json,
    fp_class_to_json,
    form_from_json,
    form_to_json,
    parse_rational,
    pieces_from_json,
    witness_from_json,
    witt_class_from_json,
    witt_class_to_json,
)
from wittpoint.witt import fp_class_of, witt_class_of


def test_parse_rational_accepts_ints_and_strings():
    from fractions import Fraction

    assert parse_rational(3) == 3
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("-7") == -7
    with pytest.raises(SchemaError, match="bad rational"):
        parse_rational("1/0")
    with pytest.raises(SchemaError, match="boolean"):
        parse_rational(True)


def test_form_schema_errors_carry_pointers():
    with pytest.raises(SchemaError, match=r"\$\.symmetry"):
        form_from_json({"gram": [["1"]]})
    with pytest.raises(SchemaError, match=r"\$\.field"):
        form_from_json({"symmetry": "symmetric", "field": "R", "gram": [["1"]]})
    with pytest.raises(SchemaError, match=r"\$\.gram"):
        form_from_json({"symmetry": "skew", "gram": [["1"]]})  # not skew
    with pytest.raises(SchemaError, match=r"\$\.gram"):
        form_from_json({"symmetry": "symmetric", "gram": [["1", "2"]]})  # ragged


def test_fp_class_round_trip():
    for cls in (fp_class_of([1], 3), fp_class_of([2, 3], 7), fp_class_of([1, 2], 5)):
        assert fp_class_from_json(fp_class_to_json(cls)) == cls


def test_witt_class_round_trip_drops_zero_residues():
    cls = witt_class_of(BilinearForm.from_diagonal([30, -2]))
    doc = witt_class_to_json(cls)
    assert witt_class_from_json(doc) == cls
    doc["residues"].append({"p": 11, "class": {"mod4": 0}})
    assert witt_class_from_json(doc) == cls  # zero residue normalized away


def test_complex_schema_rejects_inconsistent_mirror_blocks():
    doc = {
        "symmetry": "symmetric",
        "spaces": {"-1": 1, "1": 1},
        "differentials": {},
        "pairing": {"1": [["1"]], "-1": [["1"]]},  # must be -(transpose)
    }
    with pytest.raises(SchemaError, match="involution"):
        complex_from_json(doc)


def test_complex_schema_rejects_bad_differential_shape():
    doc = {
        "symmetry": "symmetric",
        "spaces": {"0": 2},
        "differentials": {"0": [["1", "0"]]},  # target degree 1 has dimension 0
        "pairing": {"0": [["1", "0"], ["0", "1"]]},
    }
    with pytest.raises(SchemaError, match="differentials"):
        complex_from_json(doc)


def test_witness_schema_requires_all_parts():
    with pytest.raises(SchemaError, match=r"\$\.f"):
        witness_from_json({"kind": "direct"})


def test_block_schema():
    doc = {"s": [["1"]], "a": [["0"]], "b": [["0"]]}
    block = block_from_json(doc)
    assert block.isotropic_rank == 1
    with pytest.raises(SchemaError, match=r"\$\.a"):
        block_from_json({"s": [["1"]], "b": [["0"]]})


def test_hodge_schema_accepts_real_shorthand():
    from wittpoint.jsonio import hodge_from_json

    doc = {"weight": 0, "pieces": [
        {"p": 0, "q": 0, "basis": [["1", "0"], [["0", "0"], ["1", "0"]]]}]}
    h = hodge_from_json(doc)
    assert h.dimension == 2 and h.is_valid()


def test_diamond_and_pieces_schema():
    d = diamond_from_json({"dim": 0, "h": [[1]]})
    assert d.dim == 0
    with pytest.raises(SchemaError, match=r"\$\.dim"):
        diamond_from_json({"h": [[1]]})
    pieces, weight = pieces_from_json({"weight": 2, "pieces": [{"j": 1, "signature": -3}]})
    assert weight == 2 and pieces[0].j == 1 and pieces[0].weight == 2
    with pytest.raises(SchemaError, match="pieces"):
        pieces_from_json({"weight": 2, "pieces": [{"j": 1}]})


@given(sig=st.integers(min_value=-10, max_value=10),
       parity2=st.integers(min_value=0, max_value=1),
       entries=st.lists(st.sampled_from([(1, 3), (2, 3), (1, 5), (2, 7)]),
                        min_size=0, max_size=3, unique_by=lambda t: t[1]))
def test_witt_class_json_round_trip_property(sig, parity2, entries):
    from wittpoint.witt import WittClassFp, WittClassQ, fp_class_of

    residues = {2: WittClassFp.rank_parity(2, parity2)}
    for u, p in entries:
        residues[p] = fp_class_of([u], p)
    value = WittClassQ.make(sig, residues)
    assert witt_class_from_json(witt_class_to_json(value)) == value
