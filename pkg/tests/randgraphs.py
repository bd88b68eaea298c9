"""Seeded random-graph generators and independent reference algorithms.

The reference loop decomposition here deliberately avoids the production
code path: strongly connected components come from pairwise reachability
(BFS closure) instead of a stack-based linear-time algorithm, and the
recursion is the naive direct one.
"""

from __future__ import annotations

import random

from sfrviz.graph import CfgNode, OrderedDigraph


def random_digraph(rng: random.Random, max_n: int = 50, density: int = 4) -> OrderedDigraph:
    """Arbitrary ordered digraph; may contain unreachable nodes and cycles."""
    n = rng.randint(1, max_n)
    methods = [f"m{k}" for k in range(rng.randint(1, 3))]
    nodes = [
        CfgNode(
            id=i,
            method_id=methods[min(i * len(methods) // n, len(methods) - 1)],
            instruction_index=i,
            instruction_text=f"op {i}",
        )
        for i in range(n)
    ]
    edges: dict[int, list[int]] = {i: [] for i in range(n)}
    m = rng.randint(0, density * n)
    for _ in range(m):
        src = rng.randrange(n)
        dst = rng.randrange(n)
        if dst not in edges[src]:
            edges[src].append(dst)
    return OrderedDigraph(nodes, edges, root=0)


def random_tree_graph(rng: random.Random, max_n: int = 200) -> OrderedDigraph:
    """A random rooted ordered tree (as a digraph of its tree edges)."""
    n = rng.randint(1, max_n)
    edges: dict[int, list[int]] = {i: [] for i in range(n)}
    for i in range(1, n):
        edges[rng.randrange(i)].append(i)
    nodes = [CfgNode(id=i, method_id="main", instruction_index=i, instruction_text=f"op {i}") for i in range(n)]
    return OrderedDigraph(nodes, edges, root=0)


class _StructuredBuilder:
    """Random structured control flow: sequences, conditionals, loops.

    Every cycle is entered only through its loop condition or do-while
    entry node, so generated graphs are reducible by construction.
    """

    def __init__(self, rng: random.Random):
        self.rng = rng
        self.edges: dict[int, list[int]] = {}
        self.next_id = 0

    def node(self) -> int:
        nid = self.next_id
        self.next_id += 1
        self.edges[nid] = []
        return nid

    def link(self, src: int, dst: int) -> None:
        if dst not in self.edges[src]:
            self.edges[src].append(dst)

    def block(self, budget: int) -> tuple[int, int]:
        """Returns (entry, exit) of a construct consuming ~budget nodes."""
        rng = self.rng
        if budget <= 1:
            nid = self.node()
            return nid, nid
        choice = rng.random()
        if choice < 0.35:  # sequence
            head_entry, head_exit = self.block(budget // 2)
            tail_entry, tail_exit = self.block(budget - budget // 2)
            self.link(head_exit, tail_entry)
            return head_entry, tail_exit
        if choice < 0.55:  # if-else
            cond = self.node()
            join = self.node()
            t_entry, t_exit = self.block((budget - 2) // 2)
            f_entry, f_exit = self.block((budget - 2) // 2)
            self.link(cond, t_entry)
            self.link(cond, f_entry)
            self.link(t_exit, join)
            self.link(f_exit, join)
            return cond, join
        if choice < 0.75:  # while: exit first, then body
            cond = self.node()
            exit_ = self.node()
            b_entry, b_exit = self.block(budget - 2)
            self.link(cond, exit_)
            self.link(cond, b_entry)
            self.link(b_exit, cond)
            return cond, exit_
        if choice < 0.85:  # do-while
            b_entry, b_exit = self.block(budget - 2)
            cond = self.node()
            exit_ = self.node()
            self.link(b_exit, cond)
            self.link(cond, b_entry)
            self.link(cond, exit_)
            return b_entry, exit_
        # switch with optional fall-throughs
        cond = self.node()
        join = self.node()
        k = rng.randint(2, 4)
        parts = [self.block(max(1, (budget - 2) // k)) for _ in range(k)]
        for entry, _ in parts:
            self.link(cond, entry)
        for i, (_, exit_) in enumerate(parts):
            if i + 1 < k and rng.random() < 0.3:
                self.link(exit_, parts[i + 1][0])
            else:
                self.link(exit_, join)
        return cond, join


def random_structured(rng: random.Random, max_nodes: int = 40) -> OrderedDigraph:
    builder = _StructuredBuilder(rng)
    entry, _ = builder.block(rng.randint(1, max_nodes))
    nodes = [
        CfgNode(id=i, method_id="main", instruction_index=i, instruction_text=f"op {i}")
        for i in sorted(builder.edges)
    ]
    return OrderedDigraph(nodes, builder.edges, root=entry)


# --- independent reference loop decomposition -------------------------------


def _closure_sccs(members: set[int], succ: dict[int, list[int]]) -> list[frozenset[int]]:
    """SCCs via BFS reachability closure: u ~ v iff u reaches v and v reaches u."""
    reach: dict[int, set[int]] = {}
    for v in members:
        seen = {v}
        frontier = [v]
        while frontier:
            u = frontier.pop()
            for w in succ[u]:
                if w in members and w not in seen:
                    seen.add(w)
                    frontier.append(w)
        reach[v] = seen
    comps = []
    assigned: set[int] = set()
    for v in sorted(members):
        if v in assigned:
            continue
        comp = frozenset(w for w in reach[v] if v in reach[w])
        assigned |= comp
        comps.append(comp)
    return comps


def reference_forest(g: OrderedDigraph, number: dict[int, int]):
    """Naive recursive loop decomposition; returns (loops, depth).

    loops: list of (header, body frozenset, parent index or None).
    """
    succ = {v: list(g.out_edges[v]) for v in g.nodes}
    loops: list[tuple[int, frozenset[int], int | None]] = []
    depth = {v: 0 for v in number}

    def rec(members: set[int], parent: int | None) -> None:
        bodies = [
            c
            for c in _closure_sccs(members, succ)
            if len(c) > 1 or next(iter(c)) in succ[next(iter(c))]
        ]
        bodies.sort(key=lambda c: min(number[v] for v in c))
        for body in bodies:
            header = min(body, key=number.__getitem__)
            idx = len(loops)
            loops.append((header, body, parent))
            for v in body:
                depth[v] += 1
            rec(set(body) - {header}, idx)

    rec(set(number), None)
    return loops, depth


def forest_signature(loops) -> frozenset:
    """Order-independent, index-free description of a loop forest."""
    sig = set()
    for entry in loops:
        header, body, parent = entry.header, entry.body, entry.parent  # Loop
        parent_body = loops[parent].body if parent is not None else None
        sig.add((header, frozenset(body), frozenset(parent_body) if parent_body else None))
    return frozenset(sig)


def reference_signature(ref_loops) -> frozenset:
    sig = set()
    for header, body, parent in ref_loops:
        parent_body = ref_loops[parent][1] if parent is not None else None
        sig.add((header, frozenset(body), frozenset(parent_body) if parent_body else None))
    return frozenset(sig)
