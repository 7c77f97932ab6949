"""
A network grown by preferential attachment
===========================================

Start from the ANTEL topology and attach extra nodes, each linking to two
existing nodes picked with probability proportional to degree. Hubs emerge,
and the terminals' hop distance shrinks.
"""
import numpy as np

from hopperf import max_terminal_distance
from hopperf.fixtures import antel_fixture, generate_preferential_extension

base, _ = antel_fixture(0.99)
grown = generate_preferential_extension(base, extra_nodes=40, edges_per_node=2, seed=7)

deg = np.bincount(np.concatenate([grown.endpoint_a, grown.endpoint_b]))
print("nodes", grown.node_count, "edges", grown.edge_count)
print("largest degrees", sorted(deg.tolist())[-5:])
print("terminal distance before", max_terminal_distance(base), "after", max_terminal_distance(grown))
