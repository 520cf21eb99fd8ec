from fractions import Fraction

import pytest

from gkzrank import (
    NotInCone,
    RankDeficient,
    ShapeMismatch,
    exponent_cone,
    face_lattice,
    newton_polytope,
    normalize_gamma,
    validate_matrix,
)
from gkzrank.lattice import rational_rank


class TestValidateMatrix:
    def test_identity_case(self):
        m = validate_matrix([[1]])
        assert m.n == 1 and m.num_columns == 1

    def test_gauss_rank_three(self):
        m = validate_matrix([[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1]])
        assert rational_rank(m.rows) == 3

    def test_proportional_rows_rejected(self):
        with pytest.raises(RankDeficient) as err:
            validate_matrix([[1, 2], [2, 4]])
        assert err.value.actual_rank == 1

    def test_ragged_rejected(self):
        with pytest.raises(ShapeMismatch):
            validate_matrix([[1, 2], [3]])

    def test_non_integer_rejected(self):
        with pytest.raises(ShapeMismatch):
            validate_matrix([[1, 2.5]])

    def test_empty_rejected(self):
        with pytest.raises(ShapeMismatch):
            validate_matrix([])

    def test_duplicate_and_zero_columns_allowed(self):
        m = validate_matrix([[1, 1, 0], [0, 0, 1]])
        assert m.num_columns == 3


class TestNewtonPolytope:
    def test_interval_hull(self):
        P = newton_polytope(validate_matrix([[1, 2]]))
        assert {(f.normal, f.level) for f in P.facets} == {((-1,), 0), ((1,), 2)}
        assert P.vertices == ((0,), (2,))

    def test_gauss_pyramid_f_vector(self):
        P = newton_polytope(validate_matrix([[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1]]))
        assert P.f_vector() == (5, 8, 5)

    def test_symmetric_interval(self):
        P = newton_polytope(validate_matrix([[-1, 1]]))
        assert P.vertices == ((-1,), (1,))
        assert P.origin_interior

    def test_hull_soundness(self, polytopes):
        for name, (matrix, P, _) in polytopes.items():
            origin = (0,) * P.n
            for point in matrix.columns + (origin,):
                for f in P.facets:
                    assert f.value(point) <= f.level
            for f in P.facets:
                on = [v for v in P.vertices if f.value(v) == f.level]
                assert len(on) >= P.n
                diffs = [tuple(a - b for a, b in zip(v, on[0])) for v in on[1:]]
                assert rational_rank(diffs) == P.n - 1 or P.n == 1


class TestExponentCone:
    def test_single_ray(self):
        cone = exponent_cone(validate_matrix([[2]]))
        assert cone.inequalities == ((1,),)
        assert cone.contains((3,)) and not cone.contains((-1,))

    def test_full_line(self):
        cone = exponent_cone(validate_matrix([[-1, 1]]))
        assert cone.is_full_space
        assert cone.contains((-7,))

    def test_gauss_cone(self, gauss):
        matrix, P, _ = gauss
        cone = exponent_cone(matrix, P)
        # 0 <= w2 <= w1 and 0 <= w3 <= w1
        inside = [(1, 0, 0), (2, 1, 2), (5, 5, 0), (0, 0, 0)]
        outside = [(1, 2, 0), (0, 1, 0), (1, 0, -1), (-1, 0, 0)]
        for w in inside:
            assert cone.contains(w)
        for w in outside:
            assert not cone.contains(w)

    def test_generators_inside(self, polytopes):
        for name, (matrix, P, _) in polytopes.items():
            cone = exponent_cone(matrix, P)
            for w in cone.generators:
                assert cone.contains(w)


class TestGauge:
    def test_interval_midpoint(self):
        P = newton_polytope(validate_matrix([[1, 2]]))
        assert P.gauge((1,)) == Fraction(1, 2)

    def test_origin(self, polytopes):
        for name, (_, P, _) in polytopes.items():
            assert P.gauge((0,) * P.n) == 0

    def test_gauss_point(self, gauss):
        _, P, _ = gauss
        assert P.gauge((2, 1, 0)) == 2

    def test_not_in_cone(self):
        P = newton_polytope(validate_matrix([[2]]))
        with pytest.raises(NotInCone):
            P.gauge((-1,))


class TestGaugeDenominator:
    @pytest.mark.parametrize(
        "rows,expected",
        [([[1, 2]], 2), ([[1]], 1), ([[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1]], 1)],
    )
    def test_examples(self, rows, expected):
        assert newton_polytope(validate_matrix(rows)).gauge_denominator == expected

    def test_integrality_on_sample(self, polytopes):
        for name, (_, P, _) in polytopes.items():
            M = P.gauge_denominator
            for w in P.lattice_points_with_gauge_at_most(Fraction(3)):
                assert (P.gauge(w) * M).denominator == 1


class TestNormalizedVolume:
    @pytest.mark.parametrize(
        "rows,expected",
        [
            ([[1, 2]], 2),
            ([[-1, 1]], 2),
            ([[1]], 1),
            ([[2]], 2),
            ([[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1]], 2),
        ],
    )
    def test_examples(self, rows, expected):
        assert newton_polytope(validate_matrix(rows)).normalized_volume == expected

    def test_volume_additivity(self, polytopes):
        for name, (_, P, _) in polytopes.items():
            pyramids = P.boundary_pyramid_volumes()
            assert sum(pyramids.values()) == P.normalized_volume

    def test_square_volume(self):
        P = newton_polytope(validate_matrix([[1, 0, 1], [0, 1, 1]]))
        assert P.normalized_volume == 2


class TestFaceLattice:
    def test_interval_index_sets(self):
        P = newton_polytope(validate_matrix([[1, 2]]))
        faces, index_sets = face_lattice(P)
        i0 = [P.faces[i].vertices for i in index_sets[0]]
        assert i0 == [((2,),)]

    def test_symmetric_interval_index_sets(self):
        P = newton_polytope(validate_matrix([[-1, 1]]))
        _, index_sets = face_lattice(P)
        assert len(index_sets[0]) == 2

    def test_gauss_index_sets(self, gauss):
        # Every square edge and vertex lies on an apex facet through the
        # origin, so only the square facet survives in the index sets.
        _, P, _ = gauss
        _, index_sets = face_lattice(P)
        assert len(index_sets[2]) == 1
        square = P.faces[index_sets[2][0]]
        assert square.vertices == ((1, 0, 0), (1, 0, 1), (1, 1, 0), (1, 1, 1))
        assert index_sets[1] == [] and index_sets[0] == []

    def test_contains_origin_flags(self, polytopes):
        for name, (_, P, _) in polytopes.items():
            for face in P.faces:
                expected = all(P.facets[i].level == 0 for i in face.active)
                assert face.contains_origin == expected

    def test_closed_under_intersection(self, gauss):
        _, P, _ = gauss
        sets = [set(f.vertices) for f in P.faces]
        for a in sets:
            for b in sets:
                c = a & b
                if c:
                    assert c in sets


class TestNormalizeGamma:
    def test_zero_unchanged(self, gauss):
        matrix, P, _ = gauss
        cone = exponent_cone(matrix, P)
        assert normalize_gamma([0, 0, 0], cone) == (0, 0, 0)

    def test_integer_shift(self):
        cone = exponent_cone(validate_matrix([[3]]))
        assert normalize_gamma([3], cone) == (0,)

    def test_full_line_untouched(self):
        cone = exponent_cone(validate_matrix([[-1, 1]]))
        assert normalize_gamma([Fraction(5, 2)], cone) == (Fraction(5, 2),)

    def test_output_contract(self, polytopes):
        for name, (matrix, P, _) in polytopes.items():
            cone = exponent_cone(matrix, P)
            gamma = [Fraction(5, 3)] * P.n
            out = normalize_gamma(gamma, cone)
            for g, o in zip(gamma, out):
                assert (g - o).denominator == 1
            for m in cone.inequalities:
                assert sum(a * b for a, b in zip(m, out)) <= 0
