"""Point-scale cobordism of self-dual complexes.

A self-dual complex here is a bounded complex of finite-dimensional
Q-vector spaces whose pairing couples degree i with degree -i; perfectness
is required on cohomology.  Cobordism witnesses are commutative squares

        G  --rho'-->  F'
        |pi           |pi'
        v             v
        F  --rho-->   G'

with a perfect pairing S'' on G x G', the two adjointness identities

        S(pi g, f)    = S''(g, rho f)
        S'(rho' g, f') = S''(g, pi' f')

checked as exact matrix equations, and the mapping-cone condition
C(rho') -> C(rho) a quasi-isomorphism.  Sign conventions are fixed once:
involution sign (-1)^(ij), cone differential d(x, y) = (-dx, fx + dy),
homotopy convention pi' rho' - rho pi = d h + h d, cone comparison map
(x, y) |-> (pi x, pi' y + h x).  Every golden test depends on these.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from random import Random

from .forms import (
    RATIONAL,
    SKEW,
    SYMMETRIC,
    BilinearForm,
    BlockMetabolicForm,
    symplectic_reduce,
)
from .linalg import Mat, extend_to_complement
from .witt import WittClassQ, witt_class_of


@dataclass
class ChainComplex:
    """Bounded complex of Q-vector spaces; differentials raise degree."""

    spaces: dict[int, int]
    differentials: dict[int, Mat] = field(default_factory=dict)

    def __post_init__(self):
        self.spaces = {i: n for i, n in self.spaces.items() if n}
        self.differentials = {i: d for i, d in self.differentials.items() if d.m and d.n}
        for i, d in self.differentials.items():
            if d.m != self.dim(i + 1) or d.n != self.dim(i):
                raise ValueError(f"differential at degree {i} has shape {d.m}x{d.n}, "
                                 f"expected {self.dim(i + 1)}x{self.dim(i)}")

    def dim(self, i: int) -> int:
        return self.spaces.get(i, 0)

    def d(self, i: int) -> Mat:
        return self.differentials.get(i, Mat.zeros(self.dim(i + 1), self.dim(i)))

    def degrees(self) -> list[int]:
        return sorted(self.spaces)

    def total_dim(self) -> int:
        return sum(self.spaces.values())

    def dd_failures(self) -> list[dict]:
        problems = []
        for i in self.degrees():
            comp = self.d(i + 1) * self.d(i)
            if not comp.is_zero():
                j = next(c for c in range(comp.n) if any(comp[r, c] for r in range(comp.m)))
                problems.append({
                    "check": "d_squared",
                    "degree": i,
                    "witness_basis_vector": j,
                    "image": [str(x) for x in comp.col(j)],
                })
        return problems

    @staticmethod
    def zero() -> "ChainComplex":
        return ChainComplex({}, {})

    @staticmethod
    def single(dim: int, degree: int = 0) -> "ChainComplex":
        return ChainComplex({degree: dim}, {})

    def direct_sum(self, other: "ChainComplex") -> "ChainComplex":
        degrees = set(self.spaces) | set(other.spaces)
        spaces = {i: self.dim(i) + other.dim(i) for i in degrees}
        diffs = {}
        for i in set(self.differentials) | set(other.differentials):
            a, b = self.d(i), other.d(i)
            top = a.hstack(Mat.zeros(a.m, b.n))
            bot = Mat.zeros(b.m, a.n).hstack(b)
            diffs[i] = top.vstack(bot)
        return ChainComplex(spaces, diffs)


class Cohomology:
    """Cocycle representatives and coordinates for one complex.

    Representatives are deterministic: kernel basis columns greedily
    extending the boundary basis, scanned left to right.
    """

    def __init__(self, c: ChainComplex):
        self.c = c
        self._cache: dict[int, tuple[Mat, Mat]] = {}

    def _data(self, i: int) -> tuple[Mat, Mat]:
        if i not in self._cache:
            boundaries = self.c.d(i - 1).column_space_basis()
            kernel = self.c.d(i).nullspace()
            picked = extend_to_complement(boundaries, kernel)
            reps = Mat.from_columns([kernel.col(j) for j in picked], m=self.c.dim(i))
            self._cache[i] = (reps, reps.hstack(boundaries))
        return self._cache[i]

    def reps(self, i: int) -> Mat:
        return self._data(i)[0]

    def dim(self, i: int) -> int:
        return self._data(i)[0].n

    def coords(self, i: int, vectors: Mat) -> Mat:
        """Class coordinates of cocycle columns; raises if not cocycles."""
        reps, aug = self._data(i)
        sol = aug.solve(vectors)
        if sol is None:
            raise ValueError(f"columns are not cocycles modulo boundaries in degree {i}")
        return Mat(reps.n, vectors.n, sol.rows[: reps.n])

    def induced(self, fmap: dict[int, Mat], i: int, target: "Cohomology") -> Mat:
        """Map on degree-i cohomology induced by a chain map into target."""
        f_i = map_block(fmap, i, self.c, target.c)
        return target.coords(i, f_i * self.reps(i))


def map_block(fmap: dict[int, Mat], i: int, src: ChainComplex, dst: ChainComplex) -> Mat:
    m = fmap.get(i)
    if m is None:
        return Mat.zeros(dst.dim(i), src.dim(i))
    if m.m != dst.dim(i) or m.n != src.dim(i):
        raise ValueError(f"chain map block at degree {i} has shape {m.m}x{m.n}, "
                         f"expected {dst.dim(i)}x{src.dim(i)}")
    return m


def chain_map_failure(fmap: dict[int, Mat], src: ChainComplex, dst: ChainComplex):
    for i in sorted(set(src.spaces) | set(dst.spaces)):
        lhs = map_block(fmap, i + 1, src, dst) * src.d(i)
        rhs = dst.d(i) * map_block(fmap, i, src, dst)
        if lhs != rhs:
            return {"check": "chain_map", "degree": i}
    return None


def compose(f: dict[int, Mat], g: dict[int, Mat], a: ChainComplex, b: ChainComplex, c: ChainComplex) -> dict[int, Mat]:
    """Degreewise f after g for g: A -> B, f: B -> C."""
    out = {}
    for i in sorted(set(a.spaces) | set(b.spaces) | set(c.spaces)):
        m = map_block(f, i, b, c) * map_block(g, i, a, b)
        if m.m and m.n:
            out[i] = m
    return out


def map_difference(f: dict[int, Mat], g: dict[int, Mat], src: ChainComplex, dst: ChainComplex) -> dict[int, Mat]:
    out = {}
    for i in sorted(set(src.spaces) | set(dst.spaces)):
        m = map_block(f, i, src, dst) - map_block(g, i, src, dst)
        if m.m and m.n:
            out[i] = m
    return out


def solve_homotopy(src: ChainComplex, dst: ChainComplex, target: dict[int, Mat]) -> dict[int, Mat] | None:
    """Find h with d h + h d = target, h of degree -1, or None.

    Over a field such an h exists exactly when the target chain map induces
    zero on all cohomology, so failure here means the witness square does
    not commute in the derived category.
    """
    var_index = {}
    for i in src.degrees():
        rows, cols = dst.dim(i - 1), src.dim(i)
        for r in range(rows):
            for c in range(cols):
                var_index[(i, r, c)] = len(var_index)
    equations = []
    rhs = []
    degrees = sorted(set(src.spaces) | set(dst.spaces))
    for i in degrees:
        t = map_block(target, i, src, dst)
        d_out = dst.d(i - 1)  # G'^{i-1} -> G'^{i}
        d_in = src.d(i)  # G^{i} -> G^{i+1}
        for r in range(t.m):
            for c in range(t.n):
                row = [Fraction(0)] * len(var_index)
                for s in range(d_out.n):
                    key = (i, s, c)
                    if key in var_index and d_out[r, s]:
                        row[var_index[key]] += d_out[r, s]
                for s in range(d_in.m):
                    key = (i + 1, r, s)
                    if key in var_index and d_in[s, c]:
                        row[var_index[key]] += d_in[s, c]
                equations.append(row)
                rhs.append([t[r, c]])
    if not var_index:
        return {} if all(x[0] == 0 for x in rhs) else None
    system = Mat(len(equations), len(var_index), equations)
    sol = system.solve(Mat(len(rhs), 1, rhs))
    if sol is None:
        return None
    h = {}
    for i in src.degrees():
        rows, cols = dst.dim(i - 1), src.dim(i)
        if rows and cols:
            h[i] = Mat(rows, cols, [[sol[var_index[(i, r, c)], 0] for c in range(cols)] for r in range(rows)])
    return h


def mapping_cone(fmap: dict[int, Mat], a: ChainComplex, b: ChainComplex) -> ChainComplex:
    """C(f)^i = A^{i+1} (+) B^i with d(x, y) = (-d_A x, f x + d_B y)."""
    degrees = sorted(set(a.spaces) | set(b.spaces) | {i - 1 for i in a.spaces})
    spaces = {i: a.dim(i + 1) + b.dim(i) for i in degrees}
    diffs = {}
    for i in degrees:
        rows = a.dim(i + 2) + b.dim(i + 1)
        cols = a.dim(i + 1) + b.dim(i)
        if not rows or not cols:
            continue
        top = (-a.d(i + 1)).hstack(Mat.zeros(a.dim(i + 2), b.dim(i)))
        bot = map_block(fmap, i + 1, a, b).hstack(b.d(i))
        diffs[i] = top.vstack(bot)
    return ChainComplex(spaces, diffs)


def cone_comparison(
    f1: dict[int, Mat], a1: ChainComplex, b1: ChainComplex,
    f2: dict[int, Mat], a2: ChainComplex, b2: ChainComplex,
    alpha: dict[int, Mat], beta: dict[int, Mat], h: dict[int, Mat],
) -> dict[int, Mat]:
    """The map C(f1) -> C(f2), (x, y) |-> (alpha x, beta y + h x)."""
    out = {}
    for i in sorted(set(a1.spaces) | set(b1.spaces) | set(a2.spaces) | set(b2.spaces) | {j - 1 for j in a1.spaces} | {j - 1 for j in a2.spaces}):
        rows = a2.dim(i + 1) + b2.dim(i)
        cols = a1.dim(i + 1) + b1.dim(i)
        if not rows or not cols:
            continue
        top = map_block(alpha, i + 1, a1, a2).hstack(Mat.zeros(a2.dim(i + 1), b1.dim(i)))
        hpart = map_block(h, i + 1, a1, b2) if h else Mat.zeros(b2.dim(i), a1.dim(i + 1))
        bot = hpart.hstack(map_block(beta, i, b1, b2))
        out[i] = top.vstack(bot)
    return out


# -- self-dual complexes ------------------------------------------------


@dataclass
class SelfDualComplex:
    """Complex with an epsilon-symmetric degree pairing S_i: F^i x F^{-i} -> Q."""

    epsilon: int
    complex: ChainComplex
    pairings: dict[int, Mat]

    @staticmethod
    def make(epsilon: int, spaces: dict[int, int], differentials: dict[int, Mat],
             pairings: dict[int, Mat]) -> "SelfDualComplex":
        """Build, completing missing S_{-i} blocks from S_{-i} = (-1)^i eps S_i^T."""
        if epsilon not in (1, -1):
            raise ValueError("epsilon must be +1 or -1")
        cx = ChainComplex(spaces, differentials)
        given = {i: s for i, s in pairings.items() if s.m and s.n}
        completed = dict(given)
        for i, s in given.items():
            if s.m != cx.dim(i) or s.n != cx.dim(-i):
                raise ValueError(f"pairing block at degree {i} has shape {s.m}x{s.n}, "
                                 f"expected {cx.dim(i)}x{cx.dim(-i)}")
            mirror = s.T.scale(Fraction((-1) ** i * epsilon))
            if -i in completed:
                if completed[-i] != mirror:
                    raise ValueError(f"pairing blocks at degrees {i} and {-i} violate the "
                                     f"(-1)^i involution symmetry")
            else:
                completed[-i] = mirror
        return SelfDualComplex(epsilon, cx, completed)

    @staticmethod
    def from_form(f: BilinearForm) -> "SelfDualComplex":
        if f.field != RATIONAL:
            raise ValueError("complexes are built over Q")
        n = f.gram.n
        return SelfDualComplex.make(f.symmetry, {0: n} if n else {}, {}, {0: f.gram} if n else {})

    def s(self, i: int) -> Mat:
        got = self.pairings.get(i)
        if got is not None:
            return got
        return Mat.zeros(self.complex.dim(i), self.complex.dim(-i))

    def dim(self, i: int) -> int:
        return self.complex.dim(i)

    def direct_sum(self, other: "SelfDualComplex") -> "SelfDualComplex":
        if self.epsilon != other.epsilon:
            raise ValueError("direct sum needs matching symmetry")
        cx = self.complex.direct_sum(other.complex)
        pairings = {}
        for i in set(self.pairings) | set(other.pairings):
            a, b = self.s(i), other.s(i)
            top = a.hstack(Mat.zeros(a.m, b.n))
            bot = Mat.zeros(b.m, a.n).hstack(b)
            pairings[i] = top.vstack(bot)
        return SelfDualComplex(self.epsilon, cx, pairings)

    def negated(self) -> "SelfDualComplex":
        return SelfDualComplex(self.epsilon, self.complex,
                               {i: -s for i, s in self.pairings.items()})


@dataclass
class ComplexReport:
    ok: bool
    problems: list
    cohomology_dims: dict[int, int]
    induced_pairings: dict[int, Mat]


def validate(c: SelfDualComplex) -> ComplexReport:
    """Check the four self-dual complex invariants, with witnesses."""
    cx = c.complex
    problems = list(cx.dd_failures())
    degrees = cx.degrees()
    for i in degrees:
        s_i, s_mi = c.s(i), c.s(-i)
        mirror = s_i.T.scale(Fraction((-1) ** i * c.epsilon))
        if s_mi != mirror:
            u, v = next(((a, b) for a in range(s_mi.m) for b in range(s_mi.n)
                         if s_mi[a, b] != mirror[a, b]))
            problems.append({
                "check": "involution_symmetry",
                "degree": i,
                "witness_pair": [u, v],
                "got": str(s_mi[u, v]),
                "expected": str(mirror[u, v]),
            })
    for i in range(min(degrees, default=0) - 1, max(degrees, default=0) + 1):
        # S(du, v) + (-1)^deg(u) S(u, dv) = 0 on F^i x F^{-i-1}
        a = cx.d(i).T * c.s(i + 1)
        b = (c.s(i) * cx.d(-i - 1)).scale(Fraction((-1) ** i))
        total = a + b
        if not total.is_zero():
            u, v = next(((r, cc) for r in range(total.m) for cc in range(total.n) if total[r, cc]))
            problems.append({
                "check": "pairing_chain_map",
                "degree": i,
                "witness_pair": [u, v],
                "value": str(total[u, v]),
            })
    coh = Cohomology(cx)
    dims = {i: coh.dim(i) for i in degrees if coh.dim(i)}
    induced = {}
    for i in sorted({abs(j) for j in dims} | ({0} if dims else set())):
        hi, hmi = coh.dim(i), coh.dim(-i)
        if hi == 0 and hmi == 0:
            continue
        if hi != hmi:
            problems.append({
                "check": "perfect_on_cohomology",
                "degree": i,
                "detail": f"H^{i} has dimension {hi} but H^{-i} has dimension {hmi}",
            })
            continue
        gram = coh.reps(i).T * c.s(i) * coh.reps(-i)
        induced[i] = gram
        if gram.n and not gram.det():
            kernel = gram.nullspace()
            problems.append({
                "check": "perfect_on_cohomology",
                "degree": i,
                "witness_class_vector": [str(x) for x in kernel.col(0)],
            })
    return ComplexReport(ok=not problems, problems=problems,
                         cohomology_dims=dims, induced_pairings=induced)


def ensure_valid(c: SelfDualComplex) -> ComplexReport:
    report = validate(c)
    if not report.ok:
        raise ValueError(f"invalid self-dual complex: {report.problems}")
    return report


def h0_form(c: SelfDualComplex) -> BilinearForm:
    """The induced form on H^0; perfectness makes it nondegenerate."""
    ensure_valid(c)
    coh = Cohomology(c.complex)
    reps = coh.reps(0)
    gram = reps.T * c.s(0) * reps
    return BilinearForm(RATIONAL, c.epsilon, gram)


def cobordism_class(c: SelfDualComplex) -> WittClassQ:
    """Class in the point cobordism group: the Witt class of the H^0 form.

    The skew sector vanishes; for epsilon = -1 the zero class is certified
    by a symplectic basis of the H^0 form.
    """
    form = h0_form(c)
    if c.epsilon == SKEW:
        symplectic_reduce(form)
        return WittClassQ.zero()
    return witt_class_of(form)


# -- witnesses ----------------------------------------------------------


@dataclass
class CobordismWitness:
    """Diagram (G, F, F', G') with maps, pairing S'', optional homotopy."""

    kind: str  # "direct" or "direct_subquotient"
    f: SelfDualComplex
    f_prime: SelfDualComplex
    g: ChainComplex
    g_prime: ChainComplex
    pi: dict[int, Mat]  # G -> F
    rho: dict[int, Mat]  # F -> G'
    rho_prime: dict[int, Mat]  # G -> F'
    pi_prime: dict[int, Mat]  # F' -> G'
    s2: dict[int, Mat]  # S'': G^i x G'^{-i} -> Q
    homotopy: dict[int, Mat] | None = None


@dataclass
class WitnessReport:
    ok: bool
    failures: list
    homotopy: dict[int, Mat] | None = None


def verify_witness(w: CobordismWitness) -> WitnessReport:
    """Check all witness conditions; reports the first failure of each kind."""
    failures = []
    for name, cpx in (("F", w.f), ("F'", w.f_prime)):
        rep = validate(cpx)
        if not rep.ok:
            failures.append({"check": "object_valid", "object": name, "problems": rep.problems})
    if w.f.epsilon != w.f_prime.epsilon:
        failures.append({"check": "symmetry_match"})
    for name, cpx in (("G", w.g), ("G'", w.g_prime)):
        bad = cpx.dd_failures()
        if bad:
            failures.append({"check": "object_valid", "object": name, "problems": bad})
    if failures:
        return WitnessReport(False, failures)

    fc, fpc = w.f.complex, w.f_prime.complex
    for name, fmap, src, dst in (
        ("pi", w.pi, w.g, fc),
        ("rho", w.rho, fc, w.g_prime),
        ("rho'", w.rho_prime, w.g, fpc),
        ("pi'", w.pi_prime, fpc, w.g_prime),
    ):
        bad = chain_map_failure(fmap, src, dst)
        if bad:
            failures.append({"check": "chain_map", "map": name, "degree": bad["degree"]})
    if failures:
        return WitnessReport(False, failures)

    # commutativity up to homotopy, in the fixed convention D = d h + h d
    diff = map_difference(
        compose(w.pi_prime, w.rho_prime, w.g, fpc, w.g_prime),
        compose(w.rho, w.pi, w.g, fc, w.g_prime),
        w.g, w.g_prime,
    )
    if w.homotopy is not None:
        ok_h = True
        for i in sorted(set(w.g.spaces) | set(w.g_prime.spaces)):
            dh = w.g_prime.d(i - 1) * _h_block(w.homotopy, i, w.g, w.g_prime)
            hd = _h_block(w.homotopy, i + 1, w.g, w.g_prime) * w.g.d(i)
            if dh + hd != map_block(diff, i, w.g, w.g_prime):
                failures.append({"check": "homotopy_identity", "degree": i})
                ok_h = False
                break
        h = w.homotopy if ok_h else None
    else:
        h = solve_homotopy(w.g, w.g_prime, diff)
        if h is None:
            failures.append({"check": "commutativity",
                             "detail": "square does not commute up to homotopy"})
    if failures:
        return WitnessReport(False, failures)

    # the two adjointness identities, as exact matrix equations
    for i in sorted(set(w.g.spaces)):
        if w.g.dim(i) and fc.dim(-i):
            lhs = map_block(w.pi, i, w.g, fc).T * w.f.s(i)
            rhs = _s2_block(w, i) * map_block(w.rho, -i, fc, w.g_prime)
            if lhs != rhs:
                failures.append({"check": "adjointness_pi_rho", "degree": i,
                                 "lhs": lhs.rows, "rhs": rhs.rows})
        if w.g.dim(i) and fpc.dim(-i):
            lhs = map_block(w.rho_prime, i, w.g, fpc).T * w.f_prime.s(i)
            rhs = _s2_block(w, i) * map_block(w.pi_prime, -i, fpc, w.g_prime)
            if lhs != rhs:
                failures.append({"check": "adjointness_rho_prime_pi_prime", "degree": i,
                                 "lhs": lhs.rows, "rhs": rhs.rows})
    if failures:
        return WitnessReport(False, failures)

    # S'' must itself be perfect on cohomology
    cg, cgp = Cohomology(w.g), Cohomology(w.g_prime)
    for i in sorted(set(w.g.degrees()) | {-j for j in w.g_prime.degrees()} | {0}):
        hi, hmi = cg.dim(i), cgp.dim(-i)
        if hi != hmi:
            failures.append({"check": "s2_perfect", "degree": i,
                             "detail": f"H^{i}(G) = {hi} vs H^{-i}(G') = {hmi}"})
            continue
        if hi == 0:
            continue
        gram = cg.reps(i).T * _s2_block(w, i) * cgp.reps(-i)
        if not gram.det():
            failures.append({"check": "s2_perfect", "degree": i})
    if failures:
        return WitnessReport(False, failures)

    # mapping-cone condition: C(rho') -> C(rho) is a quasi-isomorphism
    cone_src = mapping_cone(w.rho_prime, w.g, fpc)
    cone_dst = mapping_cone(w.rho, fc, w.g_prime)
    phi = cone_comparison(w.rho_prime, w.g, fpc, w.rho, fc, w.g_prime,
                          w.pi, w.pi_prime, h or {})
    bad = chain_map_failure(phi, cone_src, cone_dst)
    if bad:
        failures.append({"check": "cone_comparison_chain_map", "degree": bad["degree"]})
        return WitnessReport(False, failures, h)
    src_coh, dst_coh = Cohomology(cone_src), Cohomology(cone_dst)
    for i in sorted(set(cone_src.spaces) | set(cone_dst.spaces)):
        hs, hd2 = src_coh.dim(i), dst_coh.dim(i)
        if hs != hd2:
            failures.append({"check": "cone_isomorphism", "degree": i,
                             "detail": f"cone cohomology {hs} vs {hd2}"})
            continue
        if hs == 0:
            continue
        induced = src_coh.induced(phi, i, dst_coh)
        if not induced.det():
            failures.append({"check": "cone_isomorphism", "degree": i,
                             "detail": "induced map on cone cohomology is singular"})
    if failures:
        return WitnessReport(False, failures, h)

    if w.kind == "direct_subquotient":
        failures.extend(_subquotient_shape_failures(w))
    return WitnessReport(not failures, failures, h)


def _h_block(h: dict[int, Mat], i: int, g: ChainComplex, gp: ChainComplex) -> Mat:
    m = h.get(i)
    if m is None:
        return Mat.zeros(gp.dim(i - 1), g.dim(i))
    return m


def _s2_block(w: CobordismWitness, i: int) -> Mat:
    m = w.s2.get(i)
    if m is None:
        return Mat.zeros(w.g.dim(i), w.g_prime.dim(-i))
    if m.m != w.g.dim(i) or m.n != w.g_prime.dim(-i):
        raise ValueError(f"S'' block at degree {i} has shape {m.m}x{m.n}, "
                         f"expected {w.g.dim(i)}x{w.g_prime.dim(-i)}")
    return m


def _subquotient_shape_failures(w: CobordismWitness) -> list:
    failures = []
    for cpx, name in ((w.f.complex, "F"), (w.f_prime.complex, "F'"),
                      (w.g, "G"), (w.g_prime, "G'")):
        if any(i != 0 for i in cpx.degrees()):
            failures.append({"check": "subquotient_degree_zero", "object": name})
    if failures:
        return failures
    rho_p = map_block(w.rho_prime, 0, w.g, w.f_prime.complex)
    rho = map_block(w.rho, 0, w.f.complex, w.g_prime)
    pi = map_block(w.pi, 0, w.g, w.f.complex)
    pi_p = map_block(w.pi_prime, 0, w.f_prime.complex, w.g_prime)
    inj = lambda m: m.nullspace().n == 0
    surj = lambda m: m.rank() == m.m
    horizontals_inj = inj(rho_p) and inj(rho) and surj(pi) and surj(pi_p)
    horizontals_surj = surj(rho_p) and surj(rho) and inj(pi) and inj(pi_p)
    if not (horizontals_inj or horizontals_surj):
        failures.append({
            "check": "subquotient_pattern",
            "detail": "horizontal maps must be injective with vertical surjective, or conversely",
        })
    return failures


# -- constructions ------------------------------------------------------


def quotient_data(n: int, sub: Mat) -> tuple[Mat, Mat]:
    """(projection, section) for Q^n / span(sub); projection . section = I."""
    if sub.rank() != sub.n:
        raise ValueError("subspace basis is not independent")
    picked = extend_to_complement(sub, Mat.identity(n))
    section = Mat.from_columns([Mat.identity(n).col(j) for j in picked], m=n)
    full = section.hstack(sub)
    inv = full.inv()
    projection = Mat(section.n, n, inv.rows[: section.n])
    return projection, section


def truncation_witness(c: SelfDualComplex) -> CobordismWitness:
    """The witness realizing that a complex is directly cobordant to its H^0 form:
    G is the lower truncation, G' the upper truncation, and S'' is induced."""
    ensure_valid(c)
    cx = c.complex
    coh = Cohomology(cx)
    kernel = cx.d(0).nullspace()  # ker d^0 as columns in F^0
    z = kernel.n
    boundaries = cx.d(-1).column_space_basis()
    projection, section = quotient_data(cx.dim(0), boundaries)

    g_spaces = {i: cx.dim(i) for i in cx.degrees() if i < 0}
    if z:
        g_spaces[0] = z
    g_diffs = {i: cx.d(i) for i in cx.degrees() if i < -1 and cx.d(i).m}
    if cx.dim(-1) and z:
        lift = kernel.solve(cx.d(-1))
        assert lift is not None  # d^{-1} lands in ker d^0
        g_diffs[-1] = lift
    g = ChainComplex(g_spaces, g_diffs)

    q = projection.m
    gp_spaces = {i: cx.dim(i) for i in cx.degrees() if i > 0}
    if q:
        gp_spaces[0] = q
    gp_diffs = {i: cx.d(i) for i in cx.degrees() if i > 0 and cx.d(i).m}
    if q and cx.dim(1):
        gp_diffs[0] = cx.d(0) * section
    gp = ChainComplex(gp_spaces, gp_diffs)

    h0 = h0_form(c)
    f_obj = SelfDualComplex.from_form(h0)

    rho_prime = {i: Mat.identity(cx.dim(i)) for i in cx.degrees() if i < 0}
    if z:
        rho_prime[0] = kernel
    pi = {0: coh.coords(0, kernel)} if z else {}
    pi_prime = {i: Mat.identity(cx.dim(i)) for i in cx.degrees() if i > 0}
    if q:
        pi_prime[0] = projection
    rho = {0: projection * coh.reps(0)} if coh.dim(0) else {}

    s2 = {}
    for i in cx.degrees():
        if i < 0 and cx.dim(i) and cx.dim(-i):
            s2[i] = c.s(i)
    if z and q:
        s2[0] = kernel.T * c.s(0) * section
    return CobordismWitness(
        kind="direct", f=f_obj, f_prime=c, g=g, g_prime=gp,
        pi=pi, rho=rho, rho_prime=rho_prime, pi_prime=pi_prime, s2=s2,
    )


def null_witness(w: CobordismWitness) -> CobordismWitness:
    """From a direct witness between (F, S) and (F', S'), the witness showing
    (F', S') + (F, -S) is directly cobordant to 0."""
    fsum = w.f_prime.direct_sum(w.f.negated())
    fc, fpc = w.f.complex, w.f_prime.complex
    rho_prime = {}
    for i in sorted(set(w.g.spaces) | set(fsum.complex.spaces)):
        top = map_block(w.rho_prime, i, w.g, fpc)
        bot = map_block(w.pi, i, w.g, fc)
        m = top.vstack(bot)
        if m.m and m.n:
            rho_prime[i] = m
    pi_prime = {}
    for i in sorted(set(fsum.complex.spaces) | set(w.g_prime.spaces)):
        left = map_block(w.pi_prime, i, fpc, w.g_prime)
        right = -map_block(w.rho, i, fc, w.g_prime)
        m = left.hstack(right)
        if m.m and m.n:
            pi_prime[i] = m
    zero_obj = SelfDualComplex.make(w.f.epsilon, {}, {}, {})
    return CobordismWitness(
        kind="direct", f=zero_obj, f_prime=fsum, g=w.g, g_prime=w.g_prime,
        pi={}, rho={}, rho_prime=rho_prime, pi_prime=pi_prime,
        s2=dict(w.s2), homotopy=w.homotopy,
    )


def congruence_witness(f: BilinearForm, p: Mat) -> CobordismWitness:
    """Witness between a form and its congruent image P^T G P (an isometry)."""
    f2 = f.congruent_by(p)
    n = f.gram.n
    gc = ChainComplex.single(n) if n else ChainComplex.zero()
    ident = Mat.identity(n)
    pinv = p.inv()
    return CobordismWitness(
        kind="direct_subquotient",
        f=SelfDualComplex.from_form(f),
        f_prime=SelfDualComplex.from_form(f2),
        g=gc, g_prime=gc,
        pi={0: ident} if n else {},
        rho={0: ident} if n else {},
        rho_prime={0: pinv} if n else {},
        pi_prime={0: p} if n else {},
        s2={0: f.gram} if n else {},
    )


def metabolic_witness(block: BlockMetabolicForm, p: Mat | None = None) -> CobordismWitness:
    """Subquotient witness between the core S and (a congruent image of) the
    assembled block form: the isotropic block is divided out."""
    form = block.assemble()
    n = form.gram.n
    k = block.isotropic_rank
    m = block.s.gram.n
    if p is None:
        p = Mat.identity(n)
    f_big = form.congruent_by(p)
    incl = Mat.from_columns([Mat.identity(n).col(j) for j in range(k + m)], m=n)
    pi = Mat.zeros(m, k).hstack(Mat.identity(m))
    proj_old = Mat.zeros(m, k).hstack(Mat.identity(m)).hstack(Mat.zeros(m, k)).vstack(
        Mat.zeros(k, k + m).hstack(Mat.identity(k)))
    section_old = Mat.zeros(k, m + k).vstack(Mat.identity(m + k))
    rho = Mat.identity(m).vstack(Mat.zeros(k, m))
    s2 = incl.T * form.gram * section_old
    return CobordismWitness(
        kind="direct_subquotient",
        f=SelfDualComplex.from_form(block.s),
        f_prime=SelfDualComplex.from_form(f_big),
        g=ChainComplex.single(k + m),
        g_prime=ChainComplex.single(m + k),
        pi={0: pi},
        rho={0: rho},
        rho_prime={0: p.inv() * incl},
        pi_prime={0: proj_old * p},
        s2={0: s2},
    )


@dataclass
class OrthogonalSplit:
    kind: str  # "split" or "subquotient"
    restriction: BilinearForm | None = None
    complement: BilinearForm | None = None
    complement_basis: Mat | None = None
    quotient_form: BilinearForm | None = None
    witness: CobordismWitness | None = None


def orthogonal_split(f: BilinearForm, sub: Mat) -> OrthogonalSplit:
    """Split off a subspace, or divide out an isotropic one.

    If f restricted to the subspace is nondegenerate, V decomposes as an
    orthogonal direct sum.  If the restriction is zero, the subspace sits
    inside its own orthogonal complement G' and the induced form on G'/G is
    returned with the subquotient witness.  Mixed restrictions must have
    their radical extracted by the caller first.
    """
    if f.field != RATIONAL:
        raise ValueError("orthogonal_split operates over Q")
    if not f.is_nondegenerate():
        raise ValueError("ambient form must be nondegenerate")
    n = f.gram.n
    if sub.rank() != sub.n or sub.n == 0:
        raise ValueError("subspace basis must be independent and nonempty")
    restriction = sub.T * f.gram * sub
    if restriction.det():
        perp = (sub.T * f.gram).nullspace()
        return OrthogonalSplit(
            kind="split",
            restriction=BilinearForm(RATIONAL, f.symmetry, restriction),
            complement=f.restrict(perp),
            complement_basis=perp,
        )
    if not restriction.is_zero():
        raise ValueError("restriction is degenerate but nonzero: "
                         "extract the radical of the restriction first")
    perp = (sub.T * f.gram).nullspace()  # contains sub
    inside = perp.solve(sub)
    if inside is None:
        raise AssertionError("isotropic subspace not inside its orthogonal complement")
    picked = extend_to_complement(sub, perp)
    quot_reps = Mat.from_columns([perp.col(j) for j in picked], m=n)
    q_gram = quot_reps.T * f.gram * quot_reps
    quotient_form = BilinearForm(RATIONAL, f.symmetry, q_gram)

    g_basis = quot_reps.hstack(sub)  # basis of G', quotient representatives first
    dd = quot_reps.n
    projection, section = quotient_data(n, sub)
    pi = Mat.identity(dd).hstack(Mat.zeros(dd, sub.n))
    witness = CobordismWitness(
        kind="direct_subquotient",
        f=SelfDualComplex.from_form(quotient_form),
        f_prime=SelfDualComplex.from_form(f),
        g=ChainComplex.single(g_basis.n),
        g_prime=ChainComplex.single(projection.m),
        pi={0: pi} if dd and g_basis.n else {},
        rho={0: projection * quot_reps} if dd else {},
        rho_prime={0: g_basis} if g_basis.n else {},
        pi_prime={0: projection} if projection.m else {},
        s2={0: g_basis.T * f.gram * section} if g_basis.n and projection.m else {},
    )
    return OrthogonalSplit(kind="subquotient", quotient_form=quotient_form, witness=witness)


@dataclass
class WitnessCoreResult:
    core: BilinearForm
    witness_to_f: CobordismWitness
    witness_to_f_prime: CobordismWitness


def witness_common_core(w: CobordismWitness) -> WitnessCoreResult:
    """From a verified direct witness, the degree-0 core (Im delta, S'') with
    subquotient witnesses to the H^0 forms of both ends."""
    report = verify_witness(w)
    if not report.ok:
        raise ValueError(f"witness does not verify: {report.failures}")
    fc, fpc = w.f.complex, w.f_prime.complex
    ch_f, ch_fp = Cohomology(fc), Cohomology(fpc)
    ch_g, ch_gp = Cohomology(w.g), Cohomology(w.g_prime)
    pi0 = ch_g.induced(w.pi, 0, ch_f)
    rho0 = ch_f.induced(w.rho, 0, ch_gp)
    rho_p0 = ch_g.induced(w.rho_prime, 0, ch_fp)
    pi_p0 = ch_fp.induced(w.pi_prime, 0, ch_gp)
    delta = rho0 * pi0
    assert delta == pi_p0 * rho_p0  # the square commutes on cohomology

    mf = ch_f.reps(0).T * w.f.s(0) * ch_f.reps(0)
    mfp = ch_fp.reps(0).T * w.f_prime.s(0) * ch_fp.reps(0)

    im_delta = delta.column_space_basis()
    dd = im_delta.n
    x = delta.solve(im_delta)
    assert x is not None
    core_gram = (pi0 * x).T * mf * (pi0 * x)
    core_gram_2 = (rho_p0 * x).T * mfp * (rho_p0 * x)
    assert core_gram == core_gram_2  # both ends induce the same core form
    core = BilinearForm(RATIONAL, w.f.epsilon, core_gram)

    w1 = _core_side_witness(mf, w.f.epsilon, pi0, rho0, im_delta, x, core)
    w2 = _core_side_witness(mfp, w.f_prime.epsilon, rho_p0, pi_p0, im_delta, x, core)
    for side in (w1, w2):
        rep = verify_witness(side)
        if not rep.ok:
            raise AssertionError(f"constructed subquotient witness failed: {rep.failures}")
    return WitnessCoreResult(core=core, witness_to_f=w1, witness_to_f_prime=w2)


def _core_side_witness(mf: Mat, epsilon: int, pi0: Mat, rho0: Mat, im_delta: Mat,
                  x: Mat, core: BilinearForm) -> CobordismWitness:
    hf = mf.n
    bl = pi0.column_space_basis()  # L = Im pi0
    lk = rho0.nullspace()  # L'' = Ker rho0
    if bl.solve(lk) is None:
        raise AssertionError("Ker rho0 is not inside Im pi0")
    projection, section = quotient_data(hf, lk) if lk.n else (Mat.identity(hf), Mat.identity(hf))
    dd = im_delta.n
    pi_w = im_delta.solve(rho0 * bl) if bl.n else Mat.zeros(dd, 0)
    assert pi_w is not None
    rho_w = projection * pi0 * x
    f_amb = BilinearForm(RATIONAL, epsilon, mf)
    return CobordismWitness(
        kind="direct_subquotient",
        f=SelfDualComplex.from_form(core),
        f_prime=SelfDualComplex.from_form(f_amb),
        g=ChainComplex.single(bl.n),
        g_prime=ChainComplex.single(projection.m),
        pi={0: pi_w} if dd and bl.n else {},
        rho={0: rho_w} if dd and projection.m else {},
        rho_prime={0: bl} if bl.n else {},
        pi_prime={0: projection} if projection.m else {},
        s2={0: bl.T * mf * section} if bl.n and projection.m else {},
    )


# -- seeded fixture generators ------------------------------------------


def random_invertible(rng: Random, n: int, bound: int = 2, density: float = 0.35) -> Mat:
    """Product of unit triangular matrices and a permutation: always invertible.

    Sparse by default so Gram entries stay in trial-division range along
    witness chains.
    """
    lower = Mat.identity(n)
    upper = Mat.identity(n)
    for i in range(n):
        for j in range(i):
            if rng.random() < density:
                lower.rows[i][j] = Fraction(rng.randint(-bound, bound))
            if rng.random() < density:
                upper.rows[j][i] = Fraction(rng.randint(-bound, bound))
    perm = list(range(n))
    rng.shuffle(perm)
    pm = Mat.zeros(n, n)
    for i, j in enumerate(perm):
        pm.rows[i][j] = Fraction(1)
    return lower * upper * pm


def random_nondegenerate_form(rng: Random, n: int, symmetry: int = SYMMETRIC,
                              bound: int = 3) -> BilinearForm:
    if symmetry == SKEW and n % 2:
        raise ValueError("skew nondegenerate forms need even rank")
    while True:
        g = Mat.zeros(n, n)
        for i in range(n):
            for j in range(i + 1):
                v = Fraction(rng.randint(-bound, bound))
                if symmetry == SYMMETRIC:
                    g.rows[i][j] = v
                    g.rows[j][i] = v
                else:
                    if i == j:
                        continue
                    g.rows[i][j] = v
                    g.rows[j][i] = -v
        form = BilinearForm(RATIONAL, symmetry, g)
        if n == 0 or form.is_nondegenerate():
            return form


def acyclic_extension(f: BilinearForm, rng: Random, a: int) -> SelfDualComplex:
    """Extend a degree-0 form by a contractible complex in degrees -1, 0, 1.

    H^0 of the result carries exactly the input Gram matrix, so the
    cobordism class is unchanged by construction.
    """
    eps = f.symmetry
    n = f.gram.n
    mm = random_invertible(rng, a, bound=1)
    r = Mat(n, a, [[Fraction(rng.randint(-1, 1)) for _ in range(a)] for _ in range(n)])
    y = Mat.zeros(a, a)
    for i in range(a):
        for j in range(i + 1):
            v = Fraction(rng.randint(-1, 1))
            if eps == SYMMETRIC:
                y.rows[i][j] = v
                y.rows[j][i] = v
            elif i != j:
                y.rows[i][j] = v
                y.rows[j][i] = -v
    d_minus1 = Mat.zeros(n, a).vstack(Mat.identity(a)).vstack(Mat.zeros(a, a))
    d_0 = Mat.zeros(a, n).hstack(Mat.zeros(a, a)).hstack(Mat.identity(a))
    s1 = mm
    s0_top = f.gram.hstack(Mat.zeros(n, a)).hstack(r)
    s0_mid = Mat.zeros(a, n).hstack(Mat.zeros(a, a)).hstack((-mm.T).scale(Fraction(eps)))
    s0_bot = (r.T.scale(Fraction(eps))).hstack(-mm).hstack(y)
    s0 = s0_top.vstack(s0_mid).vstack(s0_bot)
    return SelfDualComplex.make(
        eps,
        {-1: a, 0: n + 2 * a, 1: a},
        {-1: d_minus1, 0: d_0},
        {0: s0, 1: s1},
    )


@dataclass
class ChainLink:
    step: str  # "metabolic", "congruence", "acyclic"
    obj: object  # BilinearForm or SelfDualComplex
    witness: CobordismWitness
    block: BlockMetabolicForm | None = None  # set for metabolic steps


@dataclass
class WitnessChain:
    core: BilinearForm
    links: list[ChainLink]


def form_height_ok(f: BilinearForm, cap: int = 10**8) -> bool:
    """Keep diagonal entries small enough for trial-division factoring."""
    from .forms import diagonalize

    return all(abs(e.numerator * e.denominator) <= cap for e in diagonalize(f).entries)


def random_witness_chain(rng: Random, core_rank: int, steps: int,
                         max_metabolic: int = 2, symmetry: int = SYMMETRIC) -> WitnessChain:
    """Random chain of witnessed cobordisms with class fixed at the core's.

    Steps whose Gram entries grow past factoring range are regenerated, so
    every object in the chain has a computable Witt class.
    """
    core = random_nondegenerate_form(rng, core_rank, symmetry=symmetry)
    current = core
    links = []
    metabolic_used = 0
    for _ in range(steps):
        choices = ["congruence", "acyclic"]
        if metabolic_used < max_metabolic:
            choices.append("metabolic")
        step = rng.choice(choices)
        if step == "metabolic" and current.gram.n > 0:
            metabolic_used += 1
            k = rng.randint(1, 2)
            m = current.gram.n
            for _attempt in range(20):
                a = Mat.zeros(k, k)
                for i in range(k):
                    for j in range(i + 1):
                        v = Fraction(rng.randint(-2, 2))
                        a.rows[i][j] = v
                        a.rows[j][i] = v
                b = Mat(m, k, [[Fraction(rng.randint(-2, 2)) for _ in range(k)] for _ in range(m)])
                block = BlockMetabolicForm(current, a, b)
                p = random_invertible(rng, m + 2 * k, bound=1)
                candidate = block.assemble().congruent_by(p)
                if form_height_ok(candidate):
                    break
            else:
                p = Mat.identity(m + 2 * k)
                candidate = block.assemble()
            w = metabolic_witness(block, p)
            current = BilinearForm(RATIONAL, symmetry, w.f_prime.s(0))
            links.append(ChainLink("metabolic", current, w, block=block))
        elif step == "congruence" and current.gram.n > 0:
            for _attempt in range(20):
                p = random_invertible(rng, current.gram.n, bound=1)
                if form_height_ok(current.congruent_by(p)):
                    break
            else:
                p = Mat.identity(current.gram.n)
            w = congruence_witness(current, p)
            current = current.congruent_by(p)
            links.append(ChainLink("congruence", current, w))
        else:
            cpx = acyclic_extension(current, rng, rng.randint(1, 2))
            w = truncation_witness(cpx)
            links.append(ChainLink("acyclic", cpx, w))
            # the chain continues from H^0 of the extension, which is `current`
    return WitnessChain(core=core, links=links)
