"""JSON encoding of every external interface.

Rationals travel as strings ("3/4"; bare integers accepted as shorthand)
so no precision is ever lost.  Output ordering is deterministic (sorted
primes, sorted degrees) for golden-file stability.
"""

from __future__ import annotations

from fractions import Fraction

from .cobordism import ChainComplex, CobordismWitness, SelfDualComplex
from .forms import RATIONAL, SKEW, SYMMETRIC, BilinearForm, BlockMetabolicForm
from .genus import HodgeDiamond, PrimitivePiece
from .hodge import HodgePiece, HodgeStructure
from .linalg import GaussianRational, Mat
from .witt import WittClassFp, WittClassQ


class SchemaError(ValueError):
    """Malformed input document; the message carries a schema pointer."""

    def __init__(self, pointer: str, message: str):
        self.pointer = pointer
        super().__init__(f"{pointer}: {message}")


def parse_rational(value, pointer: str = "$") -> Fraction:
    if isinstance(value, bool):
        raise SchemaError(pointer, "expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(pointer, f"bad rational string {value!r}") from exc
    raise SchemaError(pointer, f"expected a rational string or integer, got {type(value).__name__}")


def format_rational(x: Fraction) -> str:
    return str(x)


def parse_matrix(rows, pointer: str = "$") -> Mat:
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise SchemaError(pointer, "expected a list of rows")
    if rows and len({len(r) for r in rows}) != 1:
        raise SchemaError(pointer, "rows have unequal lengths")
    parsed = [[parse_rational(x, f"{pointer}[{i}][{j}]") for j, x in enumerate(r)]
              for i, r in enumerate(rows)]
    return Mat(len(parsed), len(parsed[0]) if parsed else 0, parsed)


def format_matrix(m: Mat) -> list:
    return [[format_rational(x) for x in r] for r in m.rows]


# -- forms ---------------------------------------------------------------


def form_from_json(doc, pointer: str = "$") -> BilinearForm:
    if not isinstance(doc, dict):
        raise SchemaError(pointer, "expected an object")
    sym = doc.get("symmetry")
    if sym not in ("symmetric", "skew"):
        raise SchemaError(f"{pointer}.symmetry", 'expected "symmetric" or "skew"')
    field_doc = doc.get("field", "Q")
    if field_doc == "Q":
        field = RATIONAL
    elif isinstance(field_doc, dict) and set(field_doc) == {"Fp"}:
        field = field_doc["Fp"]
        if not isinstance(field, int):
            raise SchemaError(f"{pointer}.field.Fp", "expected a prime integer")
    else:
        raise SchemaError(f"{pointer}.field", 'expected "Q" or {"Fp": p}')
    gram = parse_matrix(doc.get("gram", []), f"{pointer}.gram")
    try:
        return BilinearForm(field, SYMMETRIC if sym == "symmetric" else SKEW, gram)
    except ValueError as exc:
        raise SchemaError(f"{pointer}.gram", str(exc)) from exc


def form_to_json(f: BilinearForm) -> dict:
    return {
        "symmetry": "symmetric" if f.symmetry == SYMMETRIC else "skew",
        "field": "Q" if f.field == RATIONAL else {"Fp": f.field},
        "gram": format_matrix(f.gram),
    }


def block_from_json(doc, pointer: str = "$") -> BlockMetabolicForm:
    if not isinstance(doc, dict):
        raise SchemaError(pointer, "expected an object")
    for key in ("s", "a", "b"):
        if key not in doc:
            raise SchemaError(f"{pointer}.{key}", "missing block")
    s_doc = doc["s"]
    if isinstance(s_doc, dict) and "gram" in s_doc:
        s = form_from_json(s_doc, f"{pointer}.s")
    else:
        s = BilinearForm(RATIONAL, SYMMETRIC, parse_matrix(s_doc, f"{pointer}.s"))
    try:
        return BlockMetabolicForm(s, parse_matrix(doc["a"], f"{pointer}.a"),
                                  parse_matrix(doc["b"], f"{pointer}.b"))
    except ValueError as exc:
        raise SchemaError(pointer, str(exc)) from exc


# -- witt classes --------------------------------------------------------


def fp_class_to_json(c: WittClassFp) -> dict:
    if c.p == 2:
        payload = {"rank_parity": c.payload}
    elif c.p % 4 == 3:
        payload = {"mod4": c.payload}
    else:
        payload = {"rank_parity": c.payload[0], "disc_is_residue": c.payload[1]}
    return {"p": c.p, "class": payload}


def fp_class_from_json(doc, pointer: str = "$") -> WittClassFp:
    p = doc.get("p")
    payload = doc.get("class", {})
    if not isinstance(p, int):
        raise SchemaError(f"{pointer}.p", "expected a prime integer")
    try:
        if p == 2:
            return WittClassFp(2, payload["rank_parity"] % 2)
        if p % 4 == 3:
            return WittClassFp(p, payload["mod4"] % 4)
        return WittClassFp(p, (payload["rank_parity"] % 2, bool(payload["disc_is_residue"])))
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"{pointer}.class", str(exc)) from exc


def witt_class_to_json(c: WittClassQ) -> dict:
    return {
        "signature": c.signature,
        "residues": [fp_class_to_json(r) for _, r in c.residues],
    }


def witt_class_from_json(doc, pointer: str = "$") -> WittClassQ:
    sig = doc.get("signature")
    if not isinstance(sig, int):
        raise SchemaError(f"{pointer}.signature", "expected an integer")
    residues = {}
    for k, entry in enumerate(doc.get("residues", [])):
        c = fp_class_from_json(entry, f"{pointer}.residues[{k}]")
        residues[c.p] = c
    return WittClassQ.make(sig, residues)


# -- complexes and witnesses ----------------------------------------------


def _degree_map_from_json(doc, pointer: str) -> dict[int, Mat]:
    out = {}
    if doc is None:
        return out
    if not isinstance(doc, dict):
        raise SchemaError(pointer, "expected an object keyed by degree")
    for key, rows in doc.items():
        try:
            degree = int(key)
        except ValueError as exc:
            raise SchemaError(f"{pointer}.{key}", "degree keys must be integers") from exc
        out[degree] = parse_matrix(rows, f"{pointer}.{key}")
    return out


def _degree_map_to_json(maps: dict[int, Mat]) -> dict:
    return {str(i): format_matrix(m) for i, m in sorted(maps.items()) if m.m and m.n}


def chain_complex_from_json(doc, pointer: str = "$") -> ChainComplex:
    spaces_doc = doc.get("spaces", {})
    if not isinstance(spaces_doc, dict):
        raise SchemaError(f"{pointer}.spaces", "expected an object keyed by degree")
    spaces = {}
    for key, dim in spaces_doc.items():
        try:
            degree = int(key)
        except ValueError as exc:
            raise SchemaError(f"{pointer}.spaces.{key}", "degree keys must be integers") from exc
        if not isinstance(dim, int) or dim < 0:
            raise SchemaError(f"{pointer}.spaces.{key}", "dimensions are nonnegative integers")
        spaces[degree] = dim
    diffs = _degree_map_from_json(doc.get("differentials"), f"{pointer}.differentials")
    try:
        return ChainComplex(spaces, diffs)
    except ValueError as exc:
        raise SchemaError(f"{pointer}.differentials", str(exc)) from exc


def complex_from_json(doc, pointer: str = "$") -> SelfDualComplex:
    if not isinstance(doc, dict):
        raise SchemaError(pointer, "expected an object")
    sym = doc.get("symmetry")
    if sym not in ("symmetric", "skew"):
        raise SchemaError(f"{pointer}.symmetry", 'expected "symmetric" or "skew"')
    cx = chain_complex_from_json(doc, pointer)
    pairings = _degree_map_from_json(doc.get("pairing"), f"{pointer}.pairing")
    try:
        return SelfDualComplex.make(
            SYMMETRIC if sym == "symmetric" else SKEW,
            cx.spaces, cx.differentials, pairings,
        )
    except ValueError as exc:
        raise SchemaError(f"{pointer}.pairing", str(exc)) from exc


def complex_to_json(c: SelfDualComplex) -> dict:
    return {
        "symmetry": "symmetric" if c.epsilon == SYMMETRIC else "skew",
        "spaces": {str(i): n for i, n in sorted(c.complex.spaces.items())},
        "differentials": _degree_map_to_json(c.complex.differentials),
        "pairing": _degree_map_to_json({i: s for i, s in c.pairings.items() if i >= 0}),
    }


def chain_complex_to_json(c: ChainComplex) -> dict:
    return {
        "spaces": {str(i): n for i, n in sorted(c.spaces.items())},
        "differentials": _degree_map_to_json(c.differentials),
    }


def witness_from_json(doc, pointer: str = "$") -> CobordismWitness:
    if not isinstance(doc, dict):
        raise SchemaError(pointer, "expected an object")
    kind = doc.get("kind", "direct")
    if kind not in ("direct", "direct_subquotient"):
        raise SchemaError(f"{pointer}.kind", 'expected "direct" or "direct_subquotient"')
    for key in ("f", "f_prime", "g", "g_prime", "maps", "s2"):
        if key not in doc:
            raise SchemaError(f"{pointer}.{key}", "missing")
    maps = doc["maps"]
    if not isinstance(maps, dict):
        raise SchemaError(f"{pointer}.maps", "expected an object")
    for key in ("pi", "rho", "rho_prime", "pi_prime"):
        if key not in maps:
            raise SchemaError(f"{pointer}.maps.{key}", "missing")
    homotopy = None
    if doc.get("homotopy") is not None:
        homotopy = _degree_map_from_json(doc["homotopy"], f"{pointer}.homotopy")
    return CobordismWitness(
        kind=kind,
        f=complex_from_json(doc["f"], f"{pointer}.f"),
        f_prime=complex_from_json(doc["f_prime"], f"{pointer}.f_prime"),
        g=chain_complex_from_json(doc["g"], f"{pointer}.g"),
        g_prime=chain_complex_from_json(doc["g_prime"], f"{pointer}.g_prime"),
        pi=_degree_map_from_json(maps["pi"], f"{pointer}.maps.pi"),
        rho=_degree_map_from_json(maps["rho"], f"{pointer}.maps.rho"),
        rho_prime=_degree_map_from_json(maps["rho_prime"], f"{pointer}.maps.rho_prime"),
        pi_prime=_degree_map_from_json(maps["pi_prime"], f"{pointer}.maps.pi_prime"),
        s2=_degree_map_from_json(doc["s2"], f"{pointer}.s2"),
        homotopy=homotopy,
    )


def witness_to_json(w: CobordismWitness) -> dict:
    doc = {
        "kind": w.kind,
        "f": complex_to_json(w.f),
        "f_prime": complex_to_json(w.f_prime),
        "g": chain_complex_to_json(w.g),
        "g_prime": chain_complex_to_json(w.g_prime),
        "maps": {
            "pi": _degree_map_to_json(w.pi),
            "rho": _degree_map_to_json(w.rho),
            "rho_prime": _degree_map_to_json(w.rho_prime),
            "pi_prime": _degree_map_to_json(w.pi_prime),
        },
        "s2": _degree_map_to_json(w.s2),
    }
    if w.homotopy:
        doc["homotopy"] = _degree_map_to_json(w.homotopy)
    return doc


# -- hodge structures ------------------------------------------------------


def _gaussian_from_json(value, pointer: str) -> GaussianRational:
    if isinstance(value, (str, int)):
        return GaussianRational(parse_rational(value, pointer), Fraction(0))
    if isinstance(value, list) and len(value) == 2:
        return GaussianRational(parse_rational(value[0], f"{pointer}[0]"),
                                parse_rational(value[1], f"{pointer}[1]"))
    raise SchemaError(pointer, "expected a rational or an [re, im] pair")


def _gaussian_to_json(z: GaussianRational):
    return [format_rational(z.re), format_rational(z.im)]


def hodge_from_json(doc, pointer: str = "$") -> HodgeStructure:
    if not isinstance(doc, dict):
        raise SchemaError(pointer, "expected an object")
    weight = doc.get("weight")
    if not isinstance(weight, int):
        raise SchemaError(f"{pointer}.weight", "expected an integer")
    pieces_doc = doc.get("pieces")
    if not isinstance(pieces_doc, list) or not pieces_doc:
        raise SchemaError(f"{pointer}.pieces", "expected a nonempty list")
    dimension = None
    pieces = []
    for k, pd in enumerate(pieces_doc):
        pp = f"{pointer}.pieces[{k}]"
        if not isinstance(pd, dict) or "p" not in pd or "q" not in pd:
            raise SchemaError(pp, "expected {p, q, basis}")
        basis_doc = pd.get("basis", [])
        vectors = []
        for vk, vec in enumerate(basis_doc):
            if not isinstance(vec, list):
                raise SchemaError(f"{pp}.basis[{vk}]", "expected a vector")
            vectors.append([_gaussian_from_json(x, f"{pp}.basis[{vk}][{xk}]")
                            for xk, x in enumerate(vec)])
        if vectors:
            if dimension is None:
                dimension = len(vectors[0])
            if any(len(v) != dimension for v in vectors):
                raise SchemaError(f"{pp}.basis", "vector lengths disagree")
        pieces.append((pd["p"], pd["q"], vectors))
    if dimension is None:
        raise SchemaError(f"{pointer}.pieces", "no basis vectors given")
    built = [HodgePiece(p, q, Mat.from_columns(vectors, m=dimension) if vectors
             else Mat.zeros(dimension, 0)) for p, q, vectors in pieces]
    return HodgeStructure(weight=weight, dimension=dimension, pieces=built)


def hodge_to_json(h: HodgeStructure) -> dict:
    return {
        "weight": h.weight,
        "pieces": [
            {
                "p": piece.p,
                "q": piece.q,
                "basis": [[_gaussian_to_json(x) for x in col] for col in piece.basis.columns()],
            }
            for piece in sorted(h.pieces, key=lambda x: (-x.p, -x.q))
        ],
    }


# -- diamonds and primitive pieces ----------------------------------------


def diamond_from_json(doc, pointer: str = "$") -> HodgeDiamond:
    if not isinstance(doc, dict):
        raise SchemaError(pointer, "expected an object")
    dim = doc.get("dim")
    if not isinstance(dim, int) or dim < 0:
        raise SchemaError(f"{pointer}.dim", "expected a nonnegative integer")
    rows = doc.get("h")
    if not isinstance(rows, list):
        raise SchemaError(f"{pointer}.h", "expected a table of Hodge numbers")
    try:
        return HodgeDiamond.from_rows(dim, rows)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"{pointer}.h", str(exc)) from exc


def diamond_to_json(d: HodgeDiamond) -> dict:
    return {"dim": d.dim, "h": [list(r) for r in d.h]}


def pieces_from_json(doc, pointer: str = "$") -> tuple[list[PrimitivePiece], int]:
    if not isinstance(doc, dict):
        raise SchemaError(pointer, "expected an object")
    weight = doc.get("weight")
    if not isinstance(weight, int):
        raise SchemaError(f"{pointer}.weight", "expected an integer")
    out = []
    for k, pd in enumerate(doc.get("pieces", [])):
        pp = f"{pointer}.pieces[{k}]"
        if not isinstance(pd, dict) or "j" not in pd or "signature" not in pd:
            raise SchemaError(pp, "expected {j, signature}")
        try:
            out.append(PrimitivePiece(j=pd["j"], weight=pd.get("weight", weight),
                                      signature=pd["signature"]))
        except (TypeError, ValueError) as exc:
            raise SchemaError(pp, str(exc)) from exc
    return out, weight
