"""Discrete configuration spaces of point clouds.

The classification theorems ask about the space of n-tuples of distinct
points of the spectral domain: how many connected components it has, how
the coordinate-permuting S_n action moves them, and which coincidences
are reachable from each component's closure (the Gamma graph).  We model
the domain by a finite epsilon-connected sample and read off:

  circle:   (n-1)! components, cyclic isotropy, Gamma = n-cycle
  interval: n! components (one per linear order), free action, Gamma = path
  disk:     one component, full S_n isotropy, Gamma complete
"""

from cslab.configspace import (
    build_config_complex,
    cn_graph,
    components,
    has_n_cycle,
    hypothesis_report,
    sn_action_on_components,
)
from cslab.domains import SpectralDomain
from cslab.scenarios import circle_cloud, disk_cloud, interval_cloud

for name, cloud, domain in (
    ("circle", circle_cloud(), SpectralDomain.circle()),
    ("interval", interval_cloud(), SpectralDomain.interval(-1, 1)),
    ("disk", disk_cloud(), SpectralDomain.disk()),
):
    print(f"--- {name} cloud (m = {cloud.m}), n = 3 ---")
    cc = build_config_complex(cloud, 3)
    decomp = components(cc)
    action = sn_action_on_components(decomp)
    print(f"  nodes: {cc.node_count}, components: {decomp.component_count}")
    print(f"  action transitive: {action.transitive}, free: {action.free}")
    print(f"  isotropy orders: {action.isotropy_orders}")
    for comp in range(decomp.component_count):
        g = cn_graph(decomp, comp, cloud)
        print(
            f"  component {comp}: Gamma edges {sorted(sorted(e) for e in g.edges)}, "
            f"n-cycle: {has_n_cycle(g)}"
        )
    rep = hypothesis_report(cloud, 3, domain=domain)
    print(f"  theorems applicable: {rep.theorems_applicable}")
    if rep.admissible:
        print(f"  admissible families (semisimple): {rep.admissible['semisimple']}")
    print()
