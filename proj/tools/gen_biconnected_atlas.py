"""Writes every 2-connected graph on 3..7 vertices, one per isomorphism class,
as edge-list blocks separated by blank lines. Source: the networkx graph atlas."""
import sys

import networkx as nx


def main(path):
    blocks = []
    for g in nx.graph_atlas_g():
        if g.number_of_nodes() < 3 or not nx.is_biconnected(g):
            continue
        edges = sorted(tuple(sorted(e)) for e in g.edges())
        lines = [f"{g.number_of_nodes()} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
        blocks.append("\n".join(lines))
    with open(path, "w") as f:
        f.write("# 2-connected graphs, 3 <= n <= 7, up to isomorphism\n")
        f.write("\n\n".join(blocks) + "\n")
    print(len(blocks))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "tests/data/biconnected_upto7.txt")
