"""Linear-time 2-SAT via the implication graph and Tarjan's SCC algorithm."""

from __future__ import annotations

from ..cnf import CnfFormula
from .result import SolveResult, Status


def _node(lit: int) -> int:
    # x_v -> 2(v-1), ¬x_v -> 2(v-1)+1
    return 2 * (abs(lit) - 1) + (lit < 0)


def implication_graph(formula: CnfFormula) -> list[list[int]]:
    """Adjacency lists over the 2N literal nodes.

    A clause (a ∨ b) contributes ¬a → b and ¬b → a; a unit (a) is read as
    (a ∨ a) and contributes ¬a → a.
    """
    graph: list[list[int]] = [[] for _ in range(2 * formula.num_variables)]
    for i, clause in enumerate(formula.clauses):
        if len(clause) > 2:
            raise ValueError(f"clause {i} has width {len(clause)}; 2-SAT needs width <= 2")
        if len(clause) == 0:
            continue
        a = _node(clause[0])
        b = _node(clause[-1])
        graph[a ^ 1].append(b)
        if a != b:
            graph[b ^ 1].append(a)
    return graph


def strongly_connected_components(graph: list[list[int]]) -> list[int]:
    """Tarjan's algorithm, iterative.

    Returns ``comp[node]``.  Components are numbered in the order Tarjan
    completes them, which is a reverse topological order of the condensation.
    """
    n = len(graph)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [-1] * n
    stack: list[int] = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root] >= 0:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            node, i = work[-1]
            edges = graph[node]
            if i < len(edges):
                work[-1] = (node, i + 1)
                succ = edges[i]
                if index[succ] < 0:
                    index[succ] = low[succ] = counter
                    counter += 1
                    stack.append(succ)
                    on_stack[succ] = True
                    work.append((succ, 0))
                elif on_stack[succ] and index[succ] < low[node]:
                    low[node] = index[succ]
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[node] < low[parent]:
                    low[parent] = low[node]
            if low[node] == index[node]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == node:
                        break
                ncomp += 1
    return comp


def literal_components(formula: CnfFormula) -> dict[int, int]:
    """Component id of every literal ``±v`` in the implication graph."""
    comp = strongly_connected_components(implication_graph(formula))
    out = {}
    for v in range(1, formula.num_variables + 1):
        out[v] = comp[2 * (v - 1)]
        out[-v] = comp[2 * (v - 1) + 1]
    return out


def solve_2sat(formula: CnfFormula) -> SolveResult:
    """Decide a formula of width <= 2.

    UNSAT iff some x and ¬x share a component.  Otherwise x is set true when
    its component comes later in topological order than that of ¬x, i.e. was
    completed earlier by Tarjan.  Decision/conflict counters are reported as 0.
    """
    if any(len(c) == 0 for c in formula.clauses):
        implication_graph(formula)  # still reject over-wide clauses
        return SolveResult(Status.UNSAT)
    comp = strongly_connected_components(implication_graph(formula))
    model = {}
    for v in range(formula.num_variables):
        pos, neg = comp[2 * v], comp[2 * v + 1]
        if pos == neg:
            return SolveResult(Status.UNSAT)
        model[v + 1] = pos < neg
    return SolveResult(Status.SAT, model=model)
