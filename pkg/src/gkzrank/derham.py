"""The twisted logarithmic de Rham complex at a coefficient fiber.

Forms carry semigroup-ring coefficients; the differential conjugates the
exterior derivative by the monomial power of the parameter vector and the
exponential of the fiber polynomial, all expanded termwise over Q.  The
gauge filtration turns its leading part into the Koszul differential, which
drives the reduction of any top form onto the monomial cohomology basis and
from there the Gauss-Manin connection matrices.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import GammaNotNormalized, NotInCone
from .homology import verify_kouchnirenko
from .lattice import NewtonPolytope, Vector
from .linalg import SparseRationalMatrix, rank, solve
from .nondegeneracy import ensure_nondegenerate
from .rings import ConeRing, log_derivative_classes


@dataclass
class LogForm:
    """A differential form with logarithmic monomial coefficients.

    ``terms`` maps (index set, exponent) to a rational coefficient; index
    sets are strictly increasing tuples of 0-based coordinate indices and
    every exponent must lie in the exponent cone.
    """

    n: int
    degree: int
    terms: dict[tuple[tuple[int, ...], Vector], Fraction] = field(
        default_factory=dict
    )

    @classmethod
    def monomial(cls, n, indices, w, coeff=1) -> "LogForm":
        indices = tuple(sorted(indices))
        if len(set(indices)) != len(indices):
            raise ValueError("repeated wedge index")
        c = Fraction(coeff)
        form = cls(n, len(indices))
        if c != 0:
            form.terms[(indices, tuple(w))] = c
        return form

    def is_zero(self) -> bool:
        return not self.terms

    def add_term(self, indices, w, coeff):
        key = (tuple(indices), tuple(w))
        new = self.terms.get(key, Fraction(0)) + Fraction(coeff)
        if new == 0:
            self.terms.pop(key, None)
        else:
            self.terms[key] = new

    def __add__(self, other):
        if self.degree != other.degree or self.n != other.n:
            raise ValueError("form degree mismatch")
        out = LogForm(self.n, self.degree, dict(self.terms))
        for (I, w), c in other.terms.items():
            out.add_term(I, w, c)
        return out

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "LogForm":
        c = Fraction(c)
        if c == 0:
            return LogForm(self.n, self.degree)
        return LogForm(
            self.n, self.degree, {k: v * c for k, v in self.terms.items()}
        )

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __repr__(self):
        if self.is_zero():
            return "0"
        bits = []
        for (I, w), c in self.sorted_terms():
            wedge = "^".join(f"dlog t{i+1}" for i in I) or "1"
            bits.append(f"{c}*t^{w} {wedge}")
        return " + ".join(bits)


_NORMALIZED_SEEN: set = set()


def _warn_if_not_normalized(gamma, polytope: NewtonPolytope):
    key = (tuple(Fraction(g) for g in gamma), polytope.matrix.rows)
    if key in _NORMALIZED_SEEN:
        return
    _NORMALIZED_SEEN.add(key)
    for m in polytope.cone_inequalities():
        if sum(a * b for a, b in zip(m, key[0])) > 0:
            warnings.warn(
                "parameter vector is not normalized into the negated cone; "
                "rank guarantees are void",
                GammaNotNormalized,
                stacklevel=3,
            )
            return


def twisted_differential(
    gamma, fiber, form: LogForm, polytope: NewtonPolytope
) -> LogForm:
    """Apply the conjugated exterior derivative termwise.

    On a coefficient monomial the i-th component contributes the exponent
    coordinate plus the parameter entry, together with one shifted monomial
    per matrix column weighted by the fiber.
    """
    _warn_if_not_normalized(gamma, polytope)
    A = polytope.matrix
    n = polytope.n
    gamma = [Fraction(g) for g in gamma]
    fiber = [Fraction(c) for c in fiber]
    out = LogForm(n, form.degree + 1)
    for (I, w), c in form.terms.items():
        for i in range(n):
            if i in I:
                continue
            sign = (-1) ** sum(1 for k in I if k < i)
            J = tuple(sorted(I + (i,)))
            out.add_term(J, w, sign * c * (w[i] + gamma[i]))
            for j in range(A.num_columns):
                wj = A.column(j)
                if fiber[j] == 0 or A.rows[i][j] == 0:
                    continue
                shifted = tuple(a + b for a, b in zip(w, wj))
                out.add_term(J, shifted, sign * c * fiber[j] * A.rows[i][j])
    return out


def filtration_level(form: LogForm, polytope: NewtonPolytope):
    """Least filtration spot containing the form; None for the zero form."""
    if form.is_zero():
        return None
    M = polytope.gauge_denominator
    levels = []
    for (I, w), _ in form.terms.items():
        levels.append(polytope.graded_degree(w) - M * len(I))
    return max(levels)


def _top_part(form: LogForm, polytope: NewtonPolytope, level: int) -> LogForm:
    M = polytope.gauge_denominator
    out = LogForm(form.n, form.degree)
    for (I, w), c in form.terms.items():
        if polytope.graded_degree(w) - M * len(I) == level:
            out.add_term(I, w, c)
    return out


@dataclass
class GrComparison:
    ok: bool
    checked: int
    first_failure: LogForm | None = None


def check_gr_equals_koszul(
    gamma, fiber, polytope: NewtonPolytope, samples=None, degree_bound=None
) -> GrComparison:
    """Leading part of the twisted differential versus the Koszul rule.

    Samples must be homogeneous forms (all terms at one filtration level).
    By default every monomial form with coefficient degree up to two grading
    windows is tried.
    """
    n = polytope.n
    M = polytope.gauge_denominator
    ring = ConeRing(polytope)
    gs = log_derivative_classes(fiber, None, polytope)
    if samples is None:
        if degree_bound is None:
            degree_bound = 2 * M
        samples = []
        for q in range(n):
            for I in itertools.combinations(range(n), q):
                for d in range(degree_bound + 1):
                    for w in ring.monomials_of_degree(d):
                        samples.append(LogForm.monomial(n, I, w))
    checked = 0
    for form in samples:
        if form.is_zero():
            checked += 1
            continue
        level = filtration_level(form, polytope)
        if _top_part(form, polytope, level).terms != form.terms:
            raise ValueError("sample form is not homogeneous")
        d_form = twisted_differential(gamma, fiber, form, polytope)
        top = _top_part(d_form, polytope, level)
        koszul = LogForm(n, form.degree + 1)
        for (I, w), c in form.terms.items():
            for i in range(n):
                if i in I:
                    continue
                sign = (-1) ** sum(1 for k in I if k < i)
                J = tuple(sorted(I + (i,)))
                for u, coeff in gs[i].terms.items():
                    prod = ring.multiply_monomials(u, w)
                    if prod is not None:
                        koszul.add_term(J, prod, sign * c * coeff)
        checked += 1
        if top.terms != koszul.terms:
            return GrComparison(False, checked, form)
    return GrComparison(True, checked)


class ReductionBasis:
    """Monomial basis of the top cohomology with a degreewise rewrite engine.

    The basis monomials come from the greedy Koszul quotient; each coefficient
    degree gets a solver whose columns are the basis unit vectors followed by
    the Koszul images of the one-lower slice, so any top part decomposes as
    (basis part) + (leading part of a twisted differential).
    """

    def __init__(self, gamma, fiber, polytope: NewtonPolytope, kouchnirenko):
        self.polytope = polytope
        self.gamma = tuple(Fraction(g) for g in gamma)
        self.fiber = tuple(Fraction(c) for c in fiber)
        self.ring = ConeRing(polytope)
        self.kouchnirenko = kouchnirenko
        self.basis: list[Vector] = list(kouchnirenko.monomial_basis)
        self.sequence = log_derivative_classes(fiber, None, polytope)
        self._degree_data: dict[int, dict] = {}
        self.rewrite_cache: dict[Vector, tuple[Fraction, ...]] = {}

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def basis_forms(self) -> list[LogForm]:
        n = self.polytope.n
        full = tuple(range(n))
        return [LogForm.monomial(n, full, w) for w in self.basis]

    def _data(self, e: int) -> dict:
        data = self._degree_data.get(e)
        if data is not None:
            return data
        P = self.polytope
        n = P.n
        M = P.gauge_denominator
        mono = self.ring.monomials_of_degree(e)
        index = {w: i for i, w in enumerate(mono)}
        basis_here = [w for w in self.basis if P.graded_degree(w) == e]
        img_specs = []
        cols: list[dict[int, Fraction]] = []
        for w in basis_here:
            cols.append({index[w]: Fraction(1)})
        for prev in self.ring.monomials_of_degree(e - M):
            for i in range(n):
                sign = (-1) ** i
                vec: dict[int, Fraction] = {}
                for u, c in self.sequence[i].terms.items():
                    prod = self.ring.multiply_monomials(u, prev)
                    if prod is not None:
                        k = index[prod]
                        vec[k] = vec.get(k, Fraction(0)) + sign * c
                if vec:
                    img_specs.append((i, prev))
                    cols.append(vec)
        mat = SparseRationalMatrix(len(mono), len(cols))
        for j, col in enumerate(cols):
            for i, v in col.items():
                mat.set(i, j, v)
        data = {
            "monomials": mono,
            "index": index,
            "basis_here": basis_here,
            "img_specs": img_specs,
            "matrix": mat,
        }
        self._degree_data[e] = data
        return data

    def reduce(self, form: LogForm) -> tuple[Fraction, ...]:
        """Coordinates of an n-form against the basis, modulo exact forms."""
        P = self.polytope
        n = P.n
        M = P.gauge_denominator
        full = tuple(range(n))
        coords = {w: Fraction(0) for w in self.basis}
        work = LogForm(n, n, dict(form.terms))
        for (I, w), _ in work.terms.items():
            if I != full:
                raise ValueError("reduction expects a top-degree form")
            if not P.cone_contains(w):
                raise NotInCone(w)
        guard = 0
        while not work.is_zero():
            guard += 1
            if guard > 10_000:
                raise AssertionError("reduction failed to terminate")
            e = max(P.graded_degree(w) for (_, w) in work.terms)
            data = self._data(e)
            rhs = [Fraction(0)] * len(data["monomials"])
            for (I, w), c in work.terms.items():
                if P.graded_degree(w) == e:
                    rhs[data["index"][w]] = c
            x = solve(data["matrix"], rhs)
            if x is None:
                raise AssertionError(
                    "top part not in basis + image; truncation logic broken"
                )
            nb = len(data["basis_here"])
            lift = LogForm(n, n - 1)
            for k, w in enumerate(data["basis_here"]):
                if x[k] != 0:
                    coords[w] += x[k]
                    work.add_term(full, w, -x[k])
            for k, (i, prev) in enumerate(data["img_specs"]):
                c = x[nb + k]
                if c != 0:
                    I = tuple(j for j in full if j != i)
                    lift.add_term(I, prev, c)
            if not lift.is_zero():
                work = work - twisted_differential(
                    self.gamma, self.fiber, lift, P
                )
            if not work.is_zero():
                new_top = max(P.graded_degree(w) for (_, w) in work.terms)
                if new_top >= e:
                    raise AssertionError("reduction did not lower the degree")
        return tuple(coords[w] for w in self.basis)

    def reduce_monomial(self, w) -> tuple[Fraction, ...]:
        w = tuple(w)
        cached = self.rewrite_cache.get(w)
        if cached is None:
            n = self.polytope.n
            cached = self.reduce(LogForm.monomial(n, range(n), w))
            self.rewrite_cache[w] = cached
        return cached


def h_top_dimension(gamma, fiber, polytope: NewtonPolytope):
    """Cokernel dimension of the truncated top differential, plus the basis.

    The truncation keeps coefficient degrees through the certified Koszul
    bound; the filtration argument makes the cokernel equal to the full top
    cohomology, so on a nondegenerate fiber it must come out at the
    normalized volume.
    """
    _warn_if_not_normalized(gamma, polytope)
    ensure_nondegenerate(polytope.matrix, fiber, polytope)
    kz = verify_kouchnirenko(polytope.matrix, fiber, polytope)
    n = polytope.n
    M = polytope.gauge_denominator
    ring = ConeRing(polytope)
    top_bound = kz.expected_polynomial.degree + M
    src_bound = top_bound - M
    rows: list[Vector] = []
    for d in range(top_bound + 1):
        rows.extend(ring.monomials_of_degree(d))
    row_index = {w: i for i, w in enumerate(rows)}
    cols = []
    for d in range(src_bound + 1):
        for w in ring.monomials_of_degree(d):
            for i in range(n):
                cols.append((i, w))
    full = tuple(range(n))
    mat = SparseRationalMatrix(len(rows), len(cols))
    for col, (i, w) in enumerate(cols):
        I = tuple(j for j in full if j != i)
        image = twisted_differential(
            gamma, fiber, LogForm.monomial(n, I, w), polytope
        )
        for (J, u), c in image.terms.items():
            mat.set(row_index[u], col, mat.get(row_index[u], col) + c)
    dim = len(rows) - rank(mat)
    basis = ReductionBasis(gamma, fiber, polytope, kz)
    return dim, basis


def reduce_to_basis(
    form: LogForm, basis: ReductionBasis, gamma=None, fiber=None, polytope=None
) -> tuple[Fraction, ...]:
    """Coordinates of a top form in the reduction basis, modulo exact forms."""
    if gamma is not None and tuple(map(Fraction, gamma)) != basis.gamma:
        raise ValueError("basis was built for a different parameter vector")
    if fiber is not None and tuple(map(Fraction, fiber)) != basis.fiber:
        raise ValueError("basis was built for a different fiber")
    return basis.reduce(form)


def connection_matrices(gamma, fiber, basis: ReductionBasis, polytope=None):
    """Gauss-Manin matrices: one per column, acting on the reduction basis.

    Entry (k, l) of the j-th matrix is the k-th coordinate of the reduction
    of the j-th column monomial times the l-th basis monomial.
    """
    if tuple(map(Fraction, gamma)) != basis.gamma:
        raise ValueError("basis was built for a different parameter vector")
    if tuple(map(Fraction, fiber)) != basis.fiber:
        raise ValueError("basis was built for a different fiber")
    P = basis.polytope if polytope is None else polytope
    A = P.matrix
    dim = basis.dimension
    out = []
    for j in range(A.num_columns):
        wj = A.column(j)
        mat = [[Fraction(0)] * dim for _ in range(dim)]
        for l, wl in enumerate(basis.basis):
            shifted = tuple(a + b for a, b in zip(wj, wl))
            coords = basis.reduce_monomial(shifted)
            for k in range(dim):
                mat[k][l] = coords[k]
        out.append(mat)
    return out


def derham_cohomology_dims(gamma, fiber, polytope: NewtonPolytope, level_cap=None):
    """Truncated dimensions of every cohomology spot of the twisted complex.

    Opt-in diagnostic: with the leading parts certified exact away from the
    top, every spot below the top must report zero at any cap, because a
    cocycle always bounds at its own filtration level.
    """
    kz = verify_kouchnirenko(polytope.matrix, fiber, polytope)
    n = polytope.n
    M = polytope.gauge_denominator
    ring = ConeRing(polytope)
    if level_cap is None:
        level_cap = max(0, kz.expected_polynomial.degree + M - M * n)
    full = tuple(range(n))

    def slice_basis(q):
        out = []
        bound = level_cap + M * q
        for I in itertools.combinations(range(n), q):
            for d in range(bound + 1):
                for w in ring.monomials_of_degree(d):
                    out.append((I, w))
        return out

    bases = {q: slice_basis(q) for q in range(n + 1)}
    mats = {}
    for q in range(n):
        src = bases[q]
        dst = bases[q + 1]
        index = {lbl: i for i, lbl in enumerate(dst)}
        mat = SparseRationalMatrix(len(dst), len(src))
        for col, (I, w) in enumerate(src):
            image = twisted_differential(
                gamma, fiber, LogForm.monomial(n, I, w), polytope
            )
            for (J, u), c in image.terms.items():
                row = index.get((J, u))
                if row is None:
                    raise AssertionError("filtration cap leaked")
                mat.set(row, col, mat.get(row, col) + c)
        mats[q] = mat
    dims = {}
    for q in range(n + 1):
        r_out = rank(mats[q]) if q < n else 0
        r_in = rank(mats[q - 1]) if q > 0 else 0
        dims[q] = len(bases[q]) - r_out - r_in
    return dims
