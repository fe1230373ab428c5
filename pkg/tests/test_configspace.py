import numpy as np
import pytest

from cslab.configspace import (
    ComponentDecomposition,
    PointCloud,
    build_config_complex,
    cn_graph,
    components,
    has_n_cycle,
    hypothesis_report,
    perfectness_check,
    sn_action_on_components,
)
from cslab.errors import BudgetExceededError, CsLabError
from cslab.frames import Permutation
from cslab.scenarios import circle_cloud, disk_cloud, interval_cloud


def chain_cloud(m, spacing=1.0):
    """m collinear points with nearest-neighbor gap spacing."""
    return PointCloud(np.arange(m) * spacing + 0j, epsilon=1.5 * spacing, delta=0.5 * spacing)


class TestPerfectness:
    def test_scenario_clouds_perfect(self):
        for cloud in (circle_cloud(), interval_cloud(), disk_cloud()):
            assert perfectness_check(cloud).perfect

    def test_single_point_imperfect(self):
        res = perfectness_check(PointCloud(np.array([0j]), epsilon=1.0, delta=0.5))
        assert not res.perfect
        assert res.offenders == (0,)

    def test_isolated_point_flagged(self):
        cloud = PointCloud(np.array([0j, 1.0, 10.0]), epsilon=1.5, delta=0.5)
        res = perfectness_check(cloud)
        assert not res.perfect
        assert res.offenders == (2,)

    def test_close_pair_perfect(self):
        assert perfectness_check(PointCloud(np.array([0j, 1.0]), epsilon=1.5, delta=0.5)).perfect


class TestComplex:
    def test_node_count(self):
        cc = build_config_complex(chain_cloud(5), 3)
        assert cc.node_count == 5 * 4 * 3
        # lexicographic enumeration starts at (0,1,2) and ends at (4,3,2)
        assert tuple(cc.nodes[0]) == (0, 1, 2)
        assert tuple(cc.nodes[-1]) == (4, 3, 2)
        assert np.all(np.diff(cc.codes) > 0)

    def test_adjacency_example(self):
        # 3-point chain, n=2: (0,2)-(1,2) is one legal move (0 and 1 are
        # epsilon-close, tuple stays distinct); (0,1)-(1,0) changes both
        # coordinates, hence is not an edge
        cc = build_config_complex(chain_cloud(3), 2)
        edges = set()
        for src, dst in cc.edge_batches():
            for a, b in zip(src, dst):
                edges.add(frozenset((int(a), int(b))))
        code = cc.code_of
        assert frozenset((code((0, 2)), code((1, 2)))) in edges
        assert frozenset((code((0, 1)), code((1, 0)))) not in edges
        # 0 and 2 are two spacings apart: no move between them
        assert frozenset((code((0, 1)), code((2, 1)))) not in edges

    def test_budget(self):
        with pytest.raises(BudgetExceededError):
            build_config_complex(chain_cloud(40), 6, budget=1000)

    def test_n_larger_than_cloud_rejected(self):
        with pytest.raises(CsLabError):
            build_config_complex(chain_cloud(2), 3)


class TestComponents:
    def test_circle_n3(self):
        d = components(build_config_complex(circle_cloud(), 3))
        assert d.component_count == 2  # the two cyclic orders

    def test_interval_n3(self):
        d = components(build_config_complex(interval_cloud(), 3))
        assert d.component_count == 6  # one per linear order

    def test_disk_n3(self):
        d = components(build_config_complex(disk_cloud(), 3))
        assert d.component_count == 1

    @pytest.mark.slow
    def test_circle_n4(self):
        d = components(build_config_complex(circle_cloud(), 4))
        assert d.component_count == 6  # (n-1)!

    @pytest.mark.slow
    def test_interval_n4(self):
        d = components(build_config_complex(interval_cloud(), 4))
        assert d.component_count == 24  # n!

    def test_component_of_representatives(self):
        d = components(build_config_complex(interval_cloud(), 3))
        for comp, rep in enumerate(d.representatives):
            assert d.component_of(rep) == comp

    def test_invariant_under_relabeling(self):
        cloud = circle_cloud()
        rng = np.random.default_rng(0)
        perm = rng.permutation(cloud.m)
        shuffled = PointCloud(cloud.points[perm], cloud.epsilon, cloud.delta)
        d1 = components(build_config_complex(cloud, 3))
        d2 = components(build_config_complex(shuffled, 3))
        assert d1.component_count == d2.component_count
        # membership transported through the relabeling agrees up to a
        # bijection of component ids
        inv = np.empty(cloud.m, dtype=int)
        inv[perm] = np.arange(cloud.m)
        pairs = set()
        for tup in d1.complex.nodes[:: max(1, d1.complex.node_count // 200)]:
            pairs.add((d1.component_of(tup), d2.component_of(tuple(inv[list(tup)]))))
        assert len(pairs) == d1.component_count
        assert len({a for a, _ in pairs}) == len({b for _, b in pairs}) == d1.component_count


class TestAction:
    def test_circle_isotropy_cyclic(self):
        d = components(build_config_complex(circle_cloud(), 3))
        a = sn_action_on_components(d)
        assert a.transitive
        assert not a.free
        assert a.isotropy_orders == (3, 3)
        # the stabilizer of a cyclic order is generated by an n-cycle
        for stab in a.isotropy:
            non_id = [t for t in stab if t.images != tuple(range(3))]
            assert all(sorted(t.images) == [0, 1, 2] for t in non_id)
            assert len(non_id) == 2

    def test_interval_action_free(self):
        d = components(build_config_complex(interval_cloud(), 3))
        a = sn_action_on_components(d)
        assert a.transitive
        assert a.free
        assert a.isotropy_orders == (1,) * 6

    def test_disk_full_isotropy(self):
        d = components(build_config_complex(disk_cloud(), 3))
        a = sn_action_on_components(d)
        assert a.transitive
        assert not a.free
        assert a.isotropy_orders == (6,)

    def test_generator_table_is_action(self):
        # column g of the table is the permutation induced by the adjacent
        # transposition s_g; composing table lookups must match acting on
        # nodes directly
        d = components(build_config_complex(interval_cloud(), 3))
        a = sn_action_on_components(d)
        rng = np.random.default_rng(1)
        gens = [Permutation.transposition(3, i, i + 1) for i in range(2)]
        for _ in range(200):
            node = tuple(d.complex.nodes[rng.integers(d.complex.node_count)])
            comp = d.component_of(node)
            for g, theta in enumerate(gens):
                image = tuple(node[theta(i)] for i in range(3))
                assert d.component_of(image) == a.generator_table[comp, g]


class TestCnGraph:
    def test_circle_components_are_triangles(self):
        cloud = circle_cloud()
        d = components(build_config_complex(cloud, 3))
        for comp in range(d.component_count):
            g = cn_graph(d, comp, cloud)
            assert len(g.edges) == 3  # n-cycle on 3 vertices
            assert has_n_cycle(g)

    def test_interval_components_are_paths(self):
        cloud = interval_cloud()
        d = components(build_config_complex(cloud, 3))
        for comp in range(d.component_count):
            g = cn_graph(d, comp, cloud)
            assert len(g.edges) == 2  # path on 3 vertices
            assert not has_n_cycle(g)
            assert sorted(g.degree(i) for i in range(3)) == [1, 1, 2]

    def test_disk_component_is_complete(self):
        cloud = disk_cloud()
        d = components(build_config_complex(cloud, 3))
        g = cn_graph(d, 0, cloud)
        assert len(g.edges) == 3
        assert has_n_cycle(g)

    def test_edges_grow_with_delta(self):
        cloud = interval_cloud()
        wide = PointCloud(cloud.points, cloud.epsilon, delta=10.0)
        d = components(build_config_complex(cloud, 3))
        d_wide = components(build_config_complex(wide, 3))
        for comp in range(d.component_count):
            assert cn_graph(d, comp, cloud).edges <= cn_graph(d_wide, comp, wide).edges

    def test_has_n_cycle_examples(self):
        from cslab.configspace import CnGraph

        square = CnGraph(4, frozenset(map(frozenset, [(0, 1), (1, 2), (2, 3), (3, 0)])))
        assert has_n_cycle(square)
        star = CnGraph(4, frozenset(map(frozenset, [(0, 1), (0, 2), (0, 3)])))
        assert not has_n_cycle(star)


class TestHypothesisReport:
    def test_circle(self):
        rep = hypothesis_report(circle_cloud(), 3, domain=None)
        assert rep.perfect and rep.transitive and not rep.free
        assert rep.component_count == 2
        assert rep.all_gamma_have_n_cycle

    def test_circle_with_parametric_domain(self):
        from cslab.domains import SpectralDomain

        rep = hypothesis_report(circle_cloud(), 3, domain=SpectralDomain.circle())
        assert rep.theorems_applicable
        assert rep.regularity.verdict == "C"
        assert rep.admissible["semisimple"] == [
            "conjugation",
            "transpose_conjugation",
            "exotic",
        ]
        assert "extended_exotic" in rep.admissible["general"]

    def test_interval_not_applicable(self):
        from cslab.domains import SpectralDomain

        rep = hypothesis_report(interval_cloud(), 3, domain=SpectralDomain.interval(-1, 1))
        assert rep.free
        assert not rep.theorems_applicable
        assert rep.admissible == {}
        assert any("not applicable" in w for w in rep.warnings)

    def test_disk_excludes_exotic(self):
        from cslab.domains import SpectralDomain

        rep = hypothesis_report(disk_cloud(), 3, domain=SpectralDomain.disk())
        assert rep.theorems_applicable
        assert rep.regularity.verdict == "not_B"
        assert "exotic" not in rep.admissible["semisimple"]
        assert "extended_exotic" not in rep.admissible["general"]

    def test_json_is_marked_heuristic(self):
        from cslab.domains import SpectralDomain

        rep = hypothesis_report(circle_cloud(), 3, domain=SpectralDomain.circle())
        j = rep.to_json()
        assert j["heuristic"] is True
        assert j["regularity"]["heuristic"] is True
