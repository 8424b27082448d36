"""Acceptance criteria, one test each; every test records a PASS/FAIL line."""

import itertools
import random
import time

from torix.bundle import coarse_partition, fine_partition, sigma_family_dim, split_summands
from torix.exactlin import ProjectiveLinePoint as L
from torix.fan import character_from_pairings
from torix.generate import (line_pool, random_bundle, random_full_rank, random_monomial_matrix,
                            random_refined_presentation, random_two_run_bundle, stable_p2_bundle)
from torix.resolution import Splits, build_resolution, check_local_freeness, cokernel_filtrations
from torix.sheaf import (chart_graded_dims, default_radius, degeneracy_cones, projection_to_bidual,
                         skyscraper_lengths_via_section, skyscraper_support)
from torix.stability import (PointConfig, config_stability, dual_presentation, grass_stability,
                             moduli_coordinate_s4, p_equivalent, rows_as_config, semistable_classes)

from conftest import named_fans, record


def test_p2_quotient_is_a_point():
    fans = named_fans()
    rng = random.Random(101)
    bundles = [stable_p2_bundle(rng, fans["p2"], (2, 1, 3)) for _ in range(100)]
    start = time.perf_counter()
    bad = sum(not p_equivalent(a, b) for a, b in itertools.combinations(bundles, 2))
    elapsed = time.perf_counter() - start
    ok = bad == 0 and elapsed < 1.0
    record(1, "P2 discreteness", ok, f"{4950 - bad}/4950 pairs equivalent in {elapsed:.2f}s")
    assert ok


def test_boundary_values():
    rng = random.Random(202)
    seen = {"13|24": set(), "14|23": set(), "12|34": set()}
    for _ in range(100):
        p, q = line_pool(rng, 2)
        layouts = {"13|24": (p, q, p, q), "14|23": (p, q, q, p), "12|34": (p, p, q, q)}
        for key, pts in layouts.items():
            c = PointConfig.on_line([x.pair for x in pts])
            seen[key].add(moduli_coordinate_s4(c))
    values = {k: next(iter(v)) if len(v) == 1 else None for k, v in seen.items()}
    ok = (values["13|24"] == L(1, 1) and values["14|23"] == L(0, 1)
          and values["12|34"] == L(1, 0) and len(set(values.values())) == 3)
    record(2, "boundary values", ok,
           ", ".join(f"{{{k}}} -> {v}" for k, v in values.items()))
    assert ok


def test_node_count():
    six, four = semistable_classes(6).count, semistable_classes(4).count
    ok = six == 10 and four == 3
    record(3, "semistable class count", ok, f"s=6 -> {six}, s=4 -> {four}")
    assert ok


def test_resolution_exactness():
    start = time.perf_counter()
    checked, failures = 0, 0
    per_fan = {}
    for index, (name, fan) in enumerate(named_fans().items()):
        rng = random.Random(404 + index)
        count = 0
        while count < 50:
            b = random_bundle(rng, fan, 3, min_parts=3)
            r = build_resolution(b)
            upper = cokernel_filtrations(r)
            radius = default_radius(b.jumps)
            for k in range(fan.num_rays):
                grid = chart_graded_dims(r, k, radius)
                for (u, v), d in grid.by_pairings.items():
                    m = character_from_pairings(fan, k, u, v)
                    failures += d != sigma_family_dim(upper, k, m)
                    checked += 1
            count += 1
        per_fan[name] = count
    elapsed = time.perf_counter() - start
    ok = failures == 0 and elapsed < 30.0
    record(4, "resolution exactness", ok,
           f"{sum(per_fan.values())} bundles over {len(per_fan)} fans, {checked} degrees, "
           f"{failures} mismatches, {elapsed:.1f}s")
    assert ok


def test_tri_equivalence():
    fans = list(named_fans().values())
    rng = random.Random(505)
    disagree, degenerate = 0, 0
    n = 300
    for t in range(n):
        fan = fans[t % len(fans)]
        mm = random_monomial_matrix(rng, fan)
        rep = check_local_freeness(mm, fan)
        disagree += not (rep.cyclic_minors == rep.fitting == rep.fixed_point)
        degenerate += not rep.fixed_point
    ok = disagree == 0
    record(5, "local freeness tri-equivalence", ok,
           f"{n - disagree}/{n} agree ({degenerate} not locally free)")
    assert ok


def test_skyscraper_support():
    fans = list(named_fans().values())
    rng = random.Random(606)
    n, bad_support, bad_section, supported = 120, 0, 0, 0
    for t in range(n):
        p = random_refined_presentation(rng, fans[t % len(fans)], 3)
        rep = skyscraper_support(p)
        positive = {k for k, v in rep.lengths.items() if v > 0}
        bad_support += set(degeneracy_cones(p)) != positive
        supported += bool(positive)
        coarse, ref, _ = projection_to_bidual(p)
        fibres = [[i for i, j in enumerate(ref.projection) if j == c] for c in range(coarse.s)]
        for section in itertools.product(*fibres):
            bad_section += skyscraper_lengths_via_section(p, section) != rep.lengths
    ok = bad_support == 0 and bad_section == 0
    record(6, "skyscraper support", ok,
           f"{n - bad_support}/{n} supports match ({supported} nonempty), "
           f"{bad_section} section-dependent lengths")
    assert ok


def test_stability_duality():
    rng = random.Random(707)
    n_mats, dual_bad, route_bad, route_checked = 0, 0, 0, 0
    while n_mats < 200 or route_checked < 200:
        n = rng.randint(2, 7)
        m = rng.randint(1, n - 1)
        a = random_full_rank(rng, n, m)
        torus = grass_stability(a).status
        dual_bad += grass_stability(dual_presentation(a).T).status is not torus
        if all(any(a.row(i)) for i in range(n)):
            route_checked += 1
            route_bad += config_stability(rows_as_config(a)).status is not torus
        n_mats += 1
    ok = dual_bad == 0 and route_bad == 0 and route_checked >= 200
    record(7, "stability duality", ok,
           f"dual {n_mats - dual_bad}/{n_mats}, rows-vs-span {route_checked - route_bad}/{route_checked}")
    assert ok


def test_unique_locally_free_split():
    fans = named_fans()
    found = {}
    for name in ("f0", "blowup6"):
        fan = fans[name]
        c = semistable_classes(fan.num_rays, fan, fine_partition(tuple(range(fan.num_rays))))
        found[name] = [c.splits[i] for i, f in enumerate(c.locally_free) if f]
    ok = (found["f0"] == [((0, 2), (1, 3))] and found["blowup6"] == [((0, 2, 4), (1, 3, 5))])
    record(8, "unique locally free split", ok, f"4 rays {found['f0']}, 6 rays {found['blowup6']}")
    assert ok


def test_splitting_detection():
    fans = list(named_fans().values())
    rng = random.Random(909)
    n, bad = 200, 0
    for t in range(n):
        b = random_two_run_bundle(rng, fans[t % len(fans)])
        try:
            build_resolution(b)
            bad += 1
            continue
        except Splits as exc:
            bad += exc.s > 2 or coarse_partition(b).s != exc.s
        d1, d2 = split_summands(b)
        bad += tuple(x + y for x, y in zip(d1, d2)) != b.jumps
    ok = bad == 0
    record(9, "splitting detection", ok, f"{n - bad}/{n} two-run bundles split with summing divisors")
    assert ok
