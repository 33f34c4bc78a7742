"""Seeded configuration generators: determinism, nondegeneracy sweeps,
harmonic completion, and the hypothesis-forcing constructions."""

import json
from fractions import Fraction

import pytest

from harmonica.bisectors import (
    EuclideanPoint,
    bisector_pseudo_concurrency,
    steiner_add_11_check,
    triangle_bisector_concurrencies,
)
from harmonica.core import (
    DegenerateInput,
    Line,
    Point,
    all_collinear,
    collinear,
    cross_ratio_points,
    incident,
    join,
)
from harmonica.generate import (
    FORCED_THEOREMS,
    GenSpec,
    RetryLimitExceeded,
    UnsupportedTheorem,
    config_to_json,
    gen_harmonic_completion,
    gen_hypothesis_forcing,
    gen_ngon,
    gen_point,
    gen_quadrilateral,
    gen_triangle,
    sample_point_on,
)
from harmonica.pencils import (
    QuadrilateralConfig,
    TriangleConfig,
    quad_diag_product,
    quad_zeta,
    two_pencils_points,
)
from harmonica.reduction import (
    CevaGon,
    MenelaosGon,
    ceva_product,
    is_pseudo_collinear,
    is_pseudo_concurrent,
    menelaos_product,
)


def frozen_json(value) -> str:
    return json.dumps(config_to_json(value), sort_keys=True)


class TestGenSpec:
    def test_seed_range(self):
        GenSpec(seed=0)
        GenSpec(seed=2**64 - 1)
        with pytest.raises(ValueError):
            GenSpec(seed=-1)
        with pytest.raises(ValueError):
            GenSpec(seed=2**64)

    def test_positive_knobs(self):
        with pytest.raises(ValueError):
            GenSpec(seed=1, bound=0)
        with pytest.raises(ValueError):
            GenSpec(seed=1, retries=0)


class TestBasicGenerators:
    def test_point_determinism(self):
        a = gen_point(GenSpec(seed=424242))
        b = gen_point(GenSpec(seed=424242))
        assert a == b
        assert frozen_json(a) == frozen_json(b)

    def test_ngon_determinism(self):
        a = gen_ngon(GenSpec(seed=7), 6)
        b = gen_ngon(GenSpec(seed=7), 6)
        assert frozen_json(a) == frozen_json(b)
        assert frozen_json(a) != frozen_json(gen_ngon(GenSpec(seed=8), 6))

    def test_validator_sweep(self):
        for seed in range(200):
            quad = gen_quadrilateral(GenSpec(seed=seed))
            assert len(quad) == 4
            for i in range(4):
                for j in range(i + 1, 4):
                    assert quad[i] != quad[j]
                    for k in range(j + 1, 4):
                        assert not collinear(quad[i], quad[j], quad[k])

    def test_points_are_rational_affine(self):
        p = gen_point(GenSpec(seed=3))
        assert isinstance(p.x, (int, Fraction))
        assert p.w != 0

    def test_tiny_bound_terminates_or_errors_cleanly(self):
        for seed in range(20):
            spec = GenSpec(seed=seed, bound=1, retries=50)
            try:
                tri = gen_triangle(spec)
            except RetryLimitExceeded:
                continue
            assert not collinear(*tri)

    def test_ngon_needs_three_vertices(self):
        with pytest.raises(DegenerateInput):
            gen_ngon(GenSpec(seed=1), 2)

    def test_sample_point_on_lands_on_line(self):
        spec = GenSpec(seed=11)
        rng = spec.rng()
        l = Line(Fraction(2), Fraction(-3), Fraction(5))
        avoid = [Point(Fraction(-1), Fraction(1), 1)]
        for _ in range(20):
            p = sample_point_on(rng, spec.bound, l, avoid)
            assert incident(l, p)
            assert p != avoid[0]


class TestHarmonicCompletion:
    def test_triangle_from_g(self):
        spec = GenSpec(seed=21)
        tri = gen_triangle(spec)
        forced = gen_hypothesis_forcing("free-triangle", GenSpec(seed=22))
        config = forced["config"]
        rebuilt = gen_harmonic_completion(config.vertices, g=config.g)
        assert isinstance(rebuilt, TriangleConfig)
        assert rebuilt.h == config.h
        assert tri is not None

    def test_triangle_from_h_keeps_labels(self):
        forced = gen_hypothesis_forcing("free-triangle", GenSpec(seed=23))
        config = forced["config"]
        rebuilt = gen_harmonic_completion(config.vertices, h=config.h)
        assert rebuilt.h == config.h
        assert rebuilt.g == config.g

    def test_quadrilateral_from_g(self):
        forced = gen_hypothesis_forcing("free-quad", GenSpec(seed=24))
        config = forced["config"]
        rebuilt = gen_harmonic_completion(config.vertices, g=config.g)
        assert isinstance(rebuilt, QuadrilateralConfig)
        assert rebuilt.h == config.h

    def test_side_line_rejected(self):
        forced = gen_hypothesis_forcing("free-triangle", GenSpec(seed=25))
        config = forced["config"]
        bad = (config.side(1), config.g[1], config.g[2])
        with pytest.raises(DegenerateInput):
            gen_harmonic_completion(config.vertices, g=bad)

    def test_exactly_one_half_required(self):
        forced = gen_hypothesis_forcing("free-triangle", GenSpec(seed=26))
        config = forced["config"]
        with pytest.raises(DegenerateInput):
            gen_harmonic_completion(config.vertices)
        with pytest.raises(DegenerateInput):
            gen_harmonic_completion(config.vertices, g=config.g, h=config.h)

    def test_wrong_vertex_count(self):
        with pytest.raises(DegenerateInput):
            gen_harmonic_completion(
                gen_ngon(GenSpec(seed=27), 5), g=(None,) * 5
            )


class TestHypothesisForcing:
    def test_unknown_theorem(self):
        with pytest.raises(UnsupportedTheorem):
            gen_hypothesis_forcing("no-such-thing", GenSpec(seed=1))

    def test_n_rejected_where_it_does_not_apply(self):
        with pytest.raises(ValueError):
            gen_hypothesis_forcing("two-pencils", GenSpec(seed=1), n=5)

    def test_determinism_across_all_ids(self):
        for theorem in FORCED_THEOREMS:
            a = gen_hypothesis_forcing(theorem, GenSpec(seed=91))
            b = gen_hypothesis_forcing(theorem, GenSpec(seed=91))
            assert frozen_json(a) == frozen_json(b), theorem

    def test_two_pencils_meets_on_transversal(self):
        for seed in range(10):
            forced = gen_hypothesis_forcing("two-pencils", GenSpec(seed=seed))
            t = forced["transversal"]
            meets = two_pencils_points(*forced["pencils"])
            for p in meets:
                assert incident(t, p)

    def test_cor2_shares_first_line(self):
        forced = gen_hypothesis_forcing("cor2", GenSpec(seed=31))
        p1, p2 = forced["pencils"]
        assert p1.a1 == p2.a1 == join(p1.vertex, p2.vertex)

    def test_triangle_transfer_concurrent(self):
        forced = gen_hypothesis_forcing("triangle-transfer", GenSpec(seed=32))
        config, center = forced["config"], forced["center"]
        for g in config.g:
            assert incident(g, center)

    def test_quad_equivalence_criterion_holds(self):
        for seed in range(5):
            forced = gen_hypothesis_forcing("quad-equivalence", GenSpec(seed=seed))
            config = forced["config"]
            assert quad_zeta(config) == 1
            assert quad_diag_product(config) == 1

    def test_quad_ell_pairs_alias(self):
        forced = gen_hypothesis_forcing("quad-ell-pairs", GenSpec(seed=33))
        assert forced["theorem"] == "quad-ell-pairs"
        assert quad_diag_product(forced["config"]) == 1

    def test_crossratio_matched(self):
        forced = gen_hypothesis_forcing("crossratio", GenSpec(seed=34))
        a, b = forced["first"], forced["second"]
        assert cross_ratio_points(*a) == cross_ratio_points(*b)
        assert all_collinear(a) and all_collinear(b)

    def test_pappus_matched(self):
        forced = gen_hypothesis_forcing("pappus4", GenSpec(seed=35))
        a, b = forced["first"], forced["second"]
        assert cross_ratio_points(*a) == cross_ratio_points(*b)

    def test_desargues_perspective_from_center(self):
        forced = gen_hypothesis_forcing("desargues", GenSpec(seed=36))
        t1, t2, center = forced["first"], forced["second"], forced["center"]
        for p, q in zip(t1, t2):
            assert incident(join(p, q), center)

    def test_ceva_ngon_concurrent_default_five(self):
        forced = gen_hypothesis_forcing("ceva-ngon", GenSpec(seed=37))
        gon, center = forced["gon"], forced["center"]
        assert isinstance(gon, CevaGon) and gon.n == 5
        for g in gon.cevians:
            assert incident(g, center)
        assert ceva_product(gon) == 1
        verdict, _ = is_pseudo_concurrent(gon)
        assert verdict

    def test_ceva_ngon_n_override(self):
        forced = gen_hypothesis_forcing("ceva-ngon", GenSpec(seed=38), n=6)
        assert forced["gon"].n == 6

    def test_ceva_quad_is_four(self):
        forced = gen_hypothesis_forcing("ceva-quad", GenSpec(seed=39))
        assert forced["gon"].n == 4

    def test_menelaos_ngon_on_transversal(self):
        forced = gen_hypothesis_forcing("menelaos-ngon", GenSpec(seed=40))
        gon, t = forced["gon"], forced["transversal"]
        assert isinstance(gon, MenelaosGon) and gon.n == 6
        for b in gon.side_points:
            assert incident(t, b)
        assert menelaos_product(gon) == (-1) ** 6
        verdict, _ = is_pseudo_collinear(gon)
        assert verdict

    def test_duality_gon(self):
        forced = gen_hypothesis_forcing("duality", GenSpec(seed=41))
        assert isinstance(forced["gon"], MenelaosGon)
        assert forced["gon"].n == 5

    def test_bisectors_triangle(self):
        forced = gen_hypothesis_forcing("bisectors-triangle", GenSpec(seed=42))
        points = forced["points"]
        assert len(points) == 3
        assert all(isinstance(p, EuclideanPoint) for p in points)
        assert triangle_bisector_concurrencies(*points).all_true()

    def test_steiner_quadrilateral(self):
        forced = gen_hypothesis_forcing("steiner-add-11", GenSpec(seed=43))
        assert steiner_add_11_check(forced["points"]).all_true()

    def test_bisectors_ngon_even_choice(self):
        for seed in range(6):
            forced = gen_hypothesis_forcing("bisectors-ngon", GenSpec(seed=seed))
            points, choice = forced["points"], forced["choice"]
            assert len(points) == len(choice) == 5
            assert sum(1 for c in choice if c == "external") % 2 == 0
            assert bisector_pseudo_concurrency(points, choice)

    def test_every_forced_config_serializes(self):
        for theorem in FORCED_THEOREMS:
            forced = gen_hypothesis_forcing(theorem, GenSpec(seed=90))
            text = frozen_json(forced)
            assert json.loads(text)["theorem"] == theorem
