#!/usr/bin/env python3
"""Write all connected graphs of a given order (up to isomorphism) as graph6.

Independent of the Rust generator: orders <= 7 come from the networkx graph
atlas; larger orders are grown one vertex at a time from the previous order
(every connected graph has a non-cut vertex) and deduplicated with a
Weisfeiler-Lehman hash bucket followed by VF2 isomorphism checks.

usage: gen_connected_g6.py ORDER > out.g6
"""
import itertools
import sys

import networkx as nx


def atlas_connected(n):
    return [g for g in nx.graph_atlas_g() if g.number_of_nodes() == n and nx.is_connected(g)]


def grow(prev, n):
    buckets = {}
    out = []
    for base in prev:
        for r in range(1, n):
            for nbrs in itertools.combinations(range(n - 1), r):
                g = nx.convert_node_labels_to_integers(base)
                g.add_node(n - 1)
                g.add_edges_from((n - 1, v) for v in nbrs)
                key = nx.weisfeiler_lehman_graph_hash(g, iterations=4)
                bucket = buckets.setdefault(key, [])
                if any(nx.is_isomorphic(g, h) for h in bucket):
                    continue
                bucket.append(g)
                out.append(g)
    return out


def connected(n):
    if n <= 7:
        return atlas_connected(n)
    return grow(connected(n - 1), n)


def main():
    n = int(sys.argv[1])
    for g in connected(n):
        g = nx.convert_node_labels_to_integers(g)
        line = nx.to_graph6_bytes(g, header=False).decode().strip()
        print(line)


if __name__ == "__main__":
    main()
