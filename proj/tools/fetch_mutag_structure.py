#!/usr/bin/env python3
"""Rebuild data/mutag_structure/ from the MUTAG copy bundled in the `graphkernels`
sdist on PyPI.

That copy is a numpy object array of pickled igraph graphs. It carries the full
graph structure and the atom-type node labels, but no graph labels, so the
emitted directory has no MUTAG_graph_labels.txt. igraph itself is not needed:
the pickle is decoded with a stub class.

Usage: fetch_mutag_structure.py [--sdist PATH] [--out DIR]
"""

import argparse
import hashlib
import io
import pathlib
import pickle
import tarfile
import urllib.request

import numpy as np

SDIST_URL = (
    "https://pypi.org/packages/ec/6e/"
    "6664d1468cd7b3ec16fd6a791fec631ef236c1cd29db089d303db934e881/"
    "graphkernels-0.2.1.tar.gz"
)
SDIST_SHA256 = "78c3a3633b4838480d56ceb7b479890eb8f8c7545f93c8f159f443414fe559ff"
MEMBER = "graphkernels-0.2.1/graphkernels/data.mutag"


class _StubGraph:
    def __init__(self, n, edges, directed, graph_attrs, vertex_attrs, edge_attrs):
        self.n = n
        self.edges = edges
        self.vertex_attrs = vertex_attrs

    def __setstate__(self, state):
        pass


class _Unpickler(pickle.Unpickler):
    def find_class(self, module, name):
        if module == "igraph" and name == "Graph":
            return _StubGraph
        return super().find_class(module, name)


def load_graphs(blob: bytes):
    f = io.BytesIO(blob)
    np.lib.format.read_magic(f)
    np.lib.format.read_array_header_1_0(f)
    return _Unpickler(f, encoding="latin1").load()


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sdist", type=pathlib.Path)
    ap.add_argument("--out", type=pathlib.Path,
                    default=pathlib.Path(__file__).resolve().parent.parent / "data" / "mutag_structure")
    args = ap.parse_args()

    raw = args.sdist.read_bytes() if args.sdist else urllib.request.urlopen(SDIST_URL, timeout=300).read()
    digest = hashlib.sha256(raw).hexdigest()
    if digest != SDIST_SHA256:
        raise SystemExit(f"sha256 mismatch: {digest}")
    with tarfile.open(fileobj=io.BytesIO(raw), mode="r:gz") as tar:
        graphs = load_graphs(tar.extractfile(MEMBER).read())

    args.out.mkdir(parents=True, exist_ok=True)
    adj, indicator, node_labels = [], [], []
    offset = 0
    for gid, g in enumerate(graphs, start=1):
        for a, b in sorted(g.edges):
            adj.append(f"{a + offset + 1}, {b + offset + 1}")
            adj.append(f"{b + offset + 1}, {a + offset + 1}")
        indicator.extend([str(gid)] * g.n)
        # atom types are stored 1..7; the TU files use 0..6
        node_labels.extend(str(int(x) - 1) for x in g.vertex_attrs["label"])
        offset += g.n

    (args.out / "MUTAG_A.txt").write_text("\n".join(adj) + "\n")
    (args.out / "MUTAG_graph_indicator.txt").write_text("\n".join(indicator) + "\n")
    (args.out / "MUTAG_node_labels.txt").write_text("\n".join(node_labels) + "\n")
    print(f"{len(graphs)} graphs, {offset} nodes, {len(adj) // 2} edges -> {args.out}")


if __name__ == "__main__":
    main()
