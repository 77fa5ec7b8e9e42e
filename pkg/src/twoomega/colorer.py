"""Constructive bounded coloring for (p3up2, w4)-free graphs.

``color_bounded`` colors a class member with at most twice its clique
number of colors.  It dispatches on the clique number and on which trigger
configuration the graph contains, then colors a fixed partition of the
vertices part by part; each part comes with a simple strategy (independent
set, union of cliques, bipartite, an indexed cover, or exact coloring
against an asserted budget) and a budget that the executor enforces at
runtime.  Every structural claim a branch relies on is re-checkable:
cheap ones are always verified, the fuller suite runs under
``assert_proofs``.

The algorithm is not polynomial: parts whose bound is imported from
elsewhere are colored exactly at desk scale and the bound is asserted, so
a violation surfaces loudly instead of producing a bad certificate.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass

from .graphs import Graph, bit_list, bitmask, bits, induced
from .oracles import (
    Coloring,
    chromatic_number,
    clique_number,
    first_edge_in,
    two_coloring,
    validate_coloring,
)
from .patterns import PATTERNS, class_membership, find_induced, has_induced


class ColorerError(Exception):
    pass


class NotInClass(ColorerError):
    """Input graph is outside the (p3up2, w4)-free class (strict mode)."""

    def __init__(self, report):
        self.report = report
        pats = ", ".join(v.pattern_id for v in report.violations)
        super().__init__(f"graph is not (p3up2, w4)-free: induces {pats}")


class BudgetViolation(ColorerError):
    """A part needed more colors than its asserted budget: either an
    implementation bug or a counterexample candidate."""

    def __init__(self, part: str, budget: int, needed: int):
        self.part = part
        self.budget = budget
        self.needed = needed
        super().__init__(f"part {part!r} needs {needed} colors, budget {budget}")


class StrategyPreconditionFailed(ColorerError):
    """A structural claim used by the fired branch does not hold."""

    def __init__(self, ref: str, detail: str = ""):
        self.ref = ref
        super().__init__(f"claim {ref!r} failed" + (f": {detail}" if detail else ""))


class ColoringTimeout(ColorerError):
    def __init__(self, part: str):
        self.part = part
        super().__init__(f"exact coloring of part {part!r} exceeded the time budget")


@dataclass(frozen=True)
class PartStrategy:
    kind: str  # independent | cliques | bipartite | indexed_cover | exact_with_budget
    budget: int
    provenance: str = ""
    classes: tuple[tuple[str, int], ...] | None = None


@dataclass(frozen=True)
class Part:
    name: str
    vertices: int  # bitmask
    strategy: PartStrategy
    colors_used: int


@dataclass(frozen=True)
class Assertion:
    ref: str
    ok: bool


@dataclass(frozen=True)
class BranchTrace:
    branch_id: str
    anchor: tuple[int, ...]
    parts: tuple[Part, ...]
    assertions: tuple[Assertion, ...]


@dataclass(frozen=True)
class ColoringCertificate:
    coloring: Coloring
    omega: int
    budget: int
    trace: BranchTrace
    class_checked: bool


@dataclass(frozen=True)
class BranchChoice:
    branch_id: str
    pattern_id: str | None
    anchor: tuple[int, ...]


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    failure: str | None = None

    def __bool__(self) -> bool:
        return self.ok


# -- small mask helpers -------------------------------------------------------


def _independent(g: Graph, mask: int) -> bool:
    return first_edge_in(g, mask) is None


def _components_in(g: Graph, mask: int) -> list[int]:
    """Connected components of G[mask], ordered by least vertex."""
    out = []
    seen = 0
    for v in bits(mask):
        if seen >> v & 1:
            continue
        comp = 1 << v
        frontier = comp
        while frontier:
            nxt = 0
            for u in bits(frontier):
                nxt |= g.adj[u] & mask
            frontier = nxt & ~comp
            comp |= frontier
        out.append(comp)
        seen |= comp
    return out


def _is_clique(g: Graph, mask: int) -> bool:
    for v in bits(mask):
        if g.adj[v] & mask != mask ^ 1 << v:
            return False
    return True


def _pattern_free_in(g: Graph, mask: int, pid: str) -> bool:
    return not has_induced(induced(g, mask), PATTERNS[pid])


def _max_clique_in(g: Graph, mask: int) -> tuple[int, int]:
    """Clique number of G[mask] with a witness mask in g's indexing."""
    verts = bit_list(mask)
    if not verts:
        return 0, 0
    size, wit = clique_number(induced(g, verts))
    return size, bitmask(verts[i] for i in wit)


def _nset(g: Graph, vs) -> int:
    return g.neighborhood_of_set(bitmask(vs))


def _mset(g: Graph, vs) -> int:
    return g.non_neighborhood(bitmask(vs))


# -- strategy execution -------------------------------------------------------


def execute_part(
    g: Graph,
    part: int,
    strategy: PartStrategy,
    base_color: int,
    deadline: float | None = None,
) -> tuple[dict[int, int], int]:
    """Properly color G[part] with colors base_color.. and return the
    assignment plus the number of colors consumed.  Raises if the
    strategy's structural precondition fails or its budget is exceeded."""
    kind = strategy.kind
    if kind == "independent":
        edge = first_edge_in(g, part)
        if edge is not None:
            raise StrategyPreconditionFailed(
                "independent-part", f"edge {edge} inside independent part"
            )
        return {v: base_color for v in bits(part)}, 1 if part else 0

    if kind == "cliques":
        out: dict[int, int] = {}
        used = 0
        for comp in _components_in(g, part):
            if not _is_clique(g, comp):
                raise StrategyPreconditionFailed(
                    "cliques-part", "component is not a clique (induced p3 present)"
                )
            size = comp.bit_count()
            if size > strategy.budget:
                raise BudgetViolation("cliques-part", strategy.budget, size)
            for i, v in enumerate(bits(comp)):
                out[v] = base_color + i
            used = max(used, size)
        return out, used

    if kind == "bipartite":
        sub_vertices = bit_list(part)
        sub = induced(g, sub_vertices)
        col2, odd = two_coloring(sub)
        if col2 is None:
            raise StrategyPreconditionFailed(
                "bipartite-part", f"odd cycle {tuple(sub_vertices[v] for v in odd)}"
            )
        out = {sub_vertices[i]: base_color + c - 1 for i, c in enumerate(col2.colors)}
        return out, max(col2.colors, default=0)

    if kind == "indexed_cover":
        assert strategy.classes is not None
        for name, cmask in strategy.classes:
            edge = first_edge_in(g, cmask)
            if edge is not None:
                raise StrategyPreconditionFailed(
                    f"cover-class-{name}", f"class has internal edge {edge}"
                )
        out = {}
        max_idx = -1
        for v in bits(part):
            for idx, (_, cmask) in enumerate(strategy.classes):
                if cmask >> v & 1:
                    out[v] = base_color + idx
                    max_idx = max(max_idx, idx)
                    break
            else:
                raise StrategyPreconditionFailed(
                    "cover-incomplete", f"vertex {v} in no cover class"
                )
        return out, max_idx + 1

    if kind == "exact_with_budget":
        verts = bit_list(part)
        if not verts:
            return {}, 0
        remaining = None
        if deadline is not None:
            remaining = deadline - time.monotonic()
            if remaining <= 0:
                raise ColoringTimeout("exact-part")
        res = chromatic_number(induced(g, verts), remaining)
        if res.timed_out:
            raise ColoringTimeout("exact-part")
        if res.chi > strategy.budget:
            raise BudgetViolation("exact-part", strategy.budget, res.chi)
        out = {verts[i]: base_color + c - 1 for i, c in enumerate(res.coloring.colors)}
        return out, res.chi

    raise ValueError(f"unknown strategy kind {kind!r}")


# -- branch dispatch ----------------------------------------------------------

_H_ORDER = (("H1", "2k3"), ("H2", "p2uk4"), ("H3", "p2uk3"), ("H4", "four_triangle"), ("H5", "gem"))
_J_ORDER = (("J1", "p2uk3"), ("J2", "f1"), ("J3", "f2"), ("J4", "f3"), ("J5", "f4"), ("J6", "hammer"))


def _least_edge(g: Graph) -> tuple[int, int] | None:
    return first_edge_in(g, g.full_mask)


def _j7_anchor(g: Graph) -> tuple[int, ...] | None:
    """Least k1uk3 anchor (v, t1, t2, t3), preferring a non-isolated v so
    the branch's companion vertex v' exists."""
    for isolated_pass in (False, True):
        for v in range(g.n):
            if (g.adj[v] == 0) != isolated_pass:
                continue
            m = g.full_mask & ~(g.adj[v] | 1 << v)
            tri = _least_triangle_in(g, m)
            if tri is not None:
                return (v, *tri)
    return None


def _least_triangle_in(g: Graph, mask: int) -> tuple[int, int, int] | None:
    for a in bits(mask):
        na = g.adj[a] & mask & ~((2 << a) - 1)
        for b in bits(na):
            nc = na & g.adj[b] & ~((2 << b) - 1)
            if nc:
                return a, b, (nc & -nc).bit_length() - 1
    return None


def find_branch(g: Graph, omega: int | None = None) -> BranchChoice:
    """Deterministic dispatch to the proof branch that will color g.

    Assumes g is (p3up2, w4)-free; use ``color_bounded(strict=True)`` to
    have that checked.  Every graph matches some branch.
    """
    if omega is None:
        omega, _ = clique_number(g)
    if omega <= 1:
        return BranchChoice("B0", None, ())
    if omega == 2:
        return BranchChoice("OMEGA2", None, ())
    if omega >= 5:
        emb = find_induced(g, PATTERNS["w5"])
        if emb is not None:
            return BranchChoice("G1", "w5", emb.map)
        emb = find_induced(g, PATTERNS["p2uk3"])
        if emb is not None:
            return BranchChoice("G2", "p2uk3", emb.map)
        return BranchChoice("G3", None, _least_edge(g))
    if omega == 4:
        for bid, pid in _H_ORDER:
            emb = find_induced(g, PATTERNS[pid])
            if emb is not None:
                return BranchChoice(bid, pid, emb.map)
        return BranchChoice("H6", None, ())
    for bid, pid in _J_ORDER:
        emb = find_induced(g, PATTERNS[pid])
        if emb is not None:
            return BranchChoice(bid, pid, emb.map)
    anchor = _j7_anchor(g)
    if anchor is not None:
        return BranchChoice("J7", "k1uk3", anchor)
    return BranchChoice("J8", None, ())


# -- branch part tables -------------------------------------------------------
#
# Each builder returns (parts, assertions): parts are (name, mask, strategy)
# in coloring order; assertions are (ref, always, thunk).  The cheap checks
# needed for soundness are always on; the fuller structural suite runs under
# assert_proofs.


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _branch_b0(g, omega, choice):
    parts = []
    if g.n:
        parts.append(("all", g.full_mask, PartStrategy("independent", 1)))
    checks = [("edgeless", True, lambda: _least_edge(g) is None)]
    return parts, checks


def _branch_omega2(g, omega, choice):
    strat = PartStrategy(
        "exact_with_budget", 4, "triangle-free class members are 4-colorable"
    )
    checks = [("no-triangle", False, lambda: not has_induced(g, PATTERNS["k3"]))]
    return [("all", g.full_mask, strat)], checks


def _branch_g1(g, omega, choice):
    hub = choice.anchor[0]
    rim = choice.anchor[1:6]
    n_hub = g.adj[hub]
    m_hub = g.full_mask & ~(n_hub | 1 << hub)
    classes = []
    for i in range(5):
        a, b = rim[i], rim[(i + 2) % 5]
        mi = m_hub & ~g.adj[a] & ~g.adj[b]
        name = f"m{i + 1}"
        if i == 0:
            mi |= 1 << hub  # hub is anticomplete to m(hub): joins class 1
            name = "m1+hub"
        classes.append((name, mi))
    budget_n = _ceil_div(5 * (omega - 1), 4)
    parts = [
        ("n_hub", n_hub, PartStrategy(
            "exact_with_budget", budget_n,
            "c4-free neighborhood: chi <= ceil(5*omega/4)")),
        ("m_closed_hub", m_hub | 1 << hub, PartStrategy(
            "indexed_cover", 5, "rim-pair cover of the hub non-neighborhood",
            tuple(classes))),
    ]
    checks = [
        ("rim-pair-cover-classes-independent", True,
         lambda: all(_independent(g, c) for _, c in classes)),
        ("hub-neighborhood-c4-free", False,
         lambda: _pattern_free_in(g, n_hub, "c4")),
        ("hub-neighborhood-omega", False,
         lambda: _max_clique_in(g, n_hub)[0] <= omega - 1),
    ]
    return parts, checks


def _branch_g2(g, omega, choice):
    u1, u2 = choice.anchor[0], choice.anchor[1]
    tri = bitmask(choice.anchor[2:5])
    n1 = g.adj[u1] & ~(1 << u2)
    nn = g.adj[u2] & ~(g.adj[u1] | 1 << u1)
    mm = _mset(g, (u1, u2))
    m_closed = mm | 1 << u1 | 1 << u2

    comps = _components_in(g, mm)
    for comp in comps:
        if not _is_clique(g, comp):
            raise StrategyPreconditionFailed(
                "pair-non-neighborhood-cliques", "G[M(u1,u2)] is not p3-free"
            )
    c2_mask = max(comps, key=lambda c: (c.bit_count(), -(c & -c))) if comps else 0
    c2_size = c2_mask.bit_count()
    cn_size, c1_mask = _max_clique_in(g, nn)
    budget_m = max(c2_size, 2)

    def eq1() -> bool:
        return all(
            (g.adj[u] & c2_mask).bit_count() >= c2_size - 1 for u in bits(c1_mask)
        )

    parts = [
        ("n_u1", n1, PartStrategy(
            "exact_with_budget", omega - 1,
            "perfect neighborhood (no c4/c5): chi = omega <= omega(G)-1")),
        ("n_u2_minus", nn, PartStrategy(
            "exact_with_budget", cn_size, "perfect subgraph: chi = omega")),
        ("m_closed_pair", m_closed, PartStrategy("cliques", budget_m)),
    ]
    checks = [
        ("anchor-triangle-in-m", True, lambda: tri & mm == tri),
        ("eq1:|N(u) cap C2| >= |C2|-1 for u in C1", True, eq1),
        ("chain:|C1|+|C2| <= omega+1", True,
         lambda: cn_size + c2_size <= omega + 1),
        ("sub-budgets <= omega+1", True,
         lambda: cn_size + budget_m <= omega + 1),
        ("n_u1-c4-c5-free", False,
         lambda: _pattern_free_in(g, g.adj[u1], "c4") and _pattern_free_in(g, g.adj[u1], "c5")),
        ("n_u2-c4-c5-free", False,
         lambda: _pattern_free_in(g, g.adj[u2], "c4") and _pattern_free_in(g, g.adj[u2], "c5")),
    ]
    return parts, checks


def _branch_g3(g, omega, choice):
    u1, u2 = choice.anchor
    n1 = g.adj[u1]
    n2 = g.adj[u2] & ~(g.adj[u1] | 1 << u1)
    mm = _mset(g, (u1, u2))
    parts = [
        ("n_u1", n1, PartStrategy(
            "exact_with_budget", omega - 1,
            "perfect neighborhood (no c4/c5): chi = omega <= omega(G)-1")),
        ("n_u2_minus", n2, PartStrategy(
            "exact_with_budget", omega - 1,
            "perfect neighborhood (no c4/c5): chi = omega <= omega(G)-1")),
        ("m_pair_plus_u1", mm | 1 << u1, PartStrategy("cliques", 2)),
    ]
    checks = [
        ("pair-non-neighborhood-p3-k3-free", True,
         lambda: _pattern_free_in(g, mm, "p3") and _pattern_free_in(g, mm, "k3")),
        ("n_u1-c4-c5-free", False,
         lambda: _pattern_free_in(g, n1, "c4") and _pattern_free_in(g, n1, "c5")),
        ("n_u2-c4-c5-free", False,
         lambda: _pattern_free_in(g, g.adj[u2], "c4") and _pattern_free_in(g, g.adj[u2], "c5")),
    ]
    return parts, checks


def _branch_h1(g, omega, choice):
    s = choice.anchor[0:3]
    s_mask = bitmask(s)
    ns = g.neighborhood_of_set(s_mask)
    mm = g.non_neighborhood(s_mask)
    common = g.adj[s[0]] & g.adj[s[1]] & g.adj[s[2]] & ~s_mask
    n = ns & ~common

    comps = _components_in(g, mm)
    for comp in comps:
        if not _is_clique(g, comp):
            raise StrategyPreconditionFailed(
                "triangle-non-neighborhood-cliques", "G[M(S)] is not p3-free"
            )
    cmask = max(comps, key=lambda c: (c.bit_count(), -(c & -c)))
    if not 3 <= cmask.bit_count() <= 4:
        raise StrategyPreconditionFailed(
            "m-max-clique-size", f"|C| = {cmask.bit_count()}, expected 3 or 4"
        )
    u123 = bit_list(cmask)[:3]
    umask = bitmask(u123)
    n2 = 0
    for v in bits(n):
        if g.adj[v] & umask == umask:
            n2 |= 1 << v
    n1 = n & ~n2

    parts = [
        ("m_closed_plus_n2", mm | s_mask | n2, PartStrategy(
            "exact_with_budget", 4, "clique components plus common tips: chi <= 4")),
        ("n1", n1, PartStrategy(
            "exact_with_budget", 3, "(k3,c4)-free: chi <= 3")),
        ("s_complete", common, PartStrategy("independent", 1)),
    ]
    checks = [
        ("n-vertices-have-2-tips", True,
         lambda: all((g.adj[v] & umask).bit_count() >= 2 for v in bits(n))),
        ("s-complete-independent", True, lambda: _independent(g, common)),
        ("n1-k3-c4-free", False,
         lambda: _pattern_free_in(g, n1, "k3") and _pattern_free_in(g, n1, "c4")),
    ]
    return parts, checks


def _branch_h2(g, omega, choice):
    v1, v2 = choice.anchor[0], choice.anchor[1]
    umask = bitmask(choice.anchor[2:6])
    n1 = g.adj[v1] & ~(g.adj[v2] | 1 << v2)
    n2 = g.adj[v2] & ~(g.adj[v1] | 1 << v1)
    n3 = g.adj[v1] & g.adj[v2]
    n4 = 0
    for v in bits(n3):
        if (g.adj[v] & umask).bit_count() == 3:
            n4 |= 1 << v
    mm = _mset(g, (v1, v2))
    parts = [
        ("n1_n2_n4", n1 | n2 | n4, PartStrategy("independent", 1)),
        ("n3_minus_n4", n3 & ~n4, PartStrategy(
            "exact_with_budget", 3, "c4-free with omega <= 2: chi <= 3")),
        ("m_closed_pair", mm | 1 << v1 | 1 << v2, PartStrategy("cliques", 4)),
    ]
    checks = [
        ("eq2:N1|N2|N4 independent", True,
         lambda: _independent(g, n1 | n2 | n4)),
        ("n3-minus-n4-c4-free-omega2", False,
         lambda: _pattern_free_in(g, n3 & ~n4, "c4")
         and _max_clique_in(g, n3 & ~n4)[0] <= 2),
        ("m-p3-free", False, lambda: _pattern_free_in(g, mm, "p3")),
    ]
    return parts, checks


def _branch_h3(g, omega, choice):
    v1, v2 = choice.anchor[0], choice.anchor[1]
    umask = bitmask(choice.anchor[2:5])
    ns = _nset(g, (v1, v2))
    byu = {1: 0, 2: 0, 3: 0}
    uncovered = 0
    for v in bits(ns):
        cnt = (g.adj[v] & umask).bit_count()
        if cnt == 0:
            uncovered |= 1 << v
        else:
            byu[cnt] |= 1 << v
    mm = _mset(g, (v1, v2))
    parts = [
        ("n1u_plus_m_closed", byu[1] | mm | 1 << v1 | 1 << v2, PartStrategy(
            "exact_with_budget", 4, "two bipartite pieces: chi <= 4")),
        ("n2u", byu[2], PartStrategy(
            "exact_with_budget", 3, "(k3,c4)-free: chi <= 3")),
        ("n3u", byu[3], PartStrategy("independent", 1)),
    ]
    checks = [
        ("pair-neighbors-hit-triangle", True, lambda: uncovered == 0),
        ("n3u-independent", True, lambda: _independent(g, byu[3])),
        ("n1u-small-and-common", False,
         lambda: byu[1].bit_count() <= 3
         and byu[1] & ~(g.adj[v1] & g.adj[v2]) == 0),
        ("n2u-k3-c4-free", False,
         lambda: _pattern_free_in(g, byu[2], "k3") and _pattern_free_in(g, byu[2], "c4")),
    ]
    return parts, checks


def _branch_h4(g, omega, choice):
    s = choice.anchor[0:3]
    s_mask = bitmask(s)
    low = n2 = n3 = 0
    for v in range(g.n):
        if s_mask >> v & 1:
            continue
        cnt = (g.adj[v] & s_mask).bit_count()
        if cnt <= 1:
            low |= 1 << v
        elif cnt == 2:
            n2 |= 1 << v
        else:
            n3 |= 1 << v

    def a_sets_small() -> bool:
        for i in range(3):
            keep = 1 << s[i]
            a_i = 0
            for v in bits(low):
                if g.adj[v] & s_mask & ~keep == 0:
                    a_i |= 1 << v
            comps = _components_in(g, a_i)
            if any(c.bit_count() > 2 for c in comps):
                return False
            if not all(_is_clique(g, c) for c in comps):
                return False
        return True

    parts = [
        ("n0_n1_s", low | s_mask, PartStrategy(
            "exact_with_budget", 6, "three bipartite tip classes: chi <= 6")),
        ("n2", n2, PartStrategy("independent", 1)),
        ("n3", n3, PartStrategy("independent", 1)),
    ]
    checks = [
        ("n2-independent", True, lambda: _independent(g, n2)),
        ("n3-independent", True, lambda: _independent(g, n3)),
        ("tip-classes-are-matchings", False, a_sets_small),
    ]
    return parts, checks


def _branch_h5(g, omega, choice):
    v = choice.anchor[0]
    u2, u3 = choice.anchor[2], choice.anchor[3]
    nv = g.adj[v]
    mv = g.full_mask & ~(nv | 1 << v)
    m_no_u2 = (mv & ~g.adj[u2]) | 1 << v
    m_between = mv & g.adj[u2] & ~g.adj[u3]
    overlap = mv & g.adj[u2] & g.adj[u3]
    parts = [
        ("n_apex", nv, PartStrategy(
            "exact_with_budget", 4, "(c4,k4)-free neighborhood: chi <= 4")),
        ("m_no_u2_plus_apex", m_no_u2, PartStrategy("bipartite", 2)),
        ("m_u2_not_u3", m_between, PartStrategy("bipartite", 2)),
    ]
    checks = [
        ("non-neighbors-miss-u2-or-u3", True, lambda: overlap == 0),
        ("n_apex-c4-free-omega3", False,
         lambda: _pattern_free_in(g, nv, "c4") and _max_clique_in(g, nv)[0] <= 3),
        ("m-not-u3-bipartite", False,
         lambda: two_coloring(induced(g, mv & ~g.adj[u3]))[0] is not None),
    ]
    return parts, checks


def _branch_h6(g, omega, choice):
    strat = PartStrategy(
        "exact_with_budget", 8, "gem-free members: chi <= 2*omega"
    )
    checks = [("gem-free", False, lambda: not has_induced(g, PATTERNS["gem"]))]
    return [("all", g.full_mask, strat)], checks


def _branch_j1(g, omega, choice):
    v1, v2 = choice.anchor[0], choice.anchor[1]
    n1 = g.adj[v1] & ~(g.adj[v2] | 1 << v2)
    n2 = g.adj[v2] & ~(g.adj[v1] | 1 << v1)
    n3 = g.adj[v1] & g.adj[v2]
    mm = _mset(g, (v1, v2))
    parts = [
        ("n1", n1, PartStrategy("independent", 1)),
        ("n2", n2, PartStrategy("independent", 1)),
        ("n3", n3, PartStrategy("independent", 1)),
        ("m_closed_pair", mm | 1 << v1 | 1 << v2, PartStrategy("cliques", 3)),
    ]
    checks = [
        ("n1-independent", True, lambda: _independent(g, n1)),
        ("n2-independent", True, lambda: _independent(g, n2)),
        ("n3-independent", True, lambda: _independent(g, n3)),
        ("m-p3-free", False, lambda: _pattern_free_in(g, mm, "p3")),
    ]
    return parts, checks


def _branch_j_triangle(g, omega, choice):
    # Shared by the three 6-vertex triggers built around a triangle S:
    # singles attach to one s-vertex and join that class, doubles are
    # independent, non-neighbors of S are independent.
    s = choice.anchor[0:3]
    s_mask = bitmask(s)
    a = [0, 0, 0]
    n2 = 0
    n0 = 0
    over = 0
    for v in range(g.n):
        if s_mask >> v & 1:
            continue
        row = g.adj[v] & s_mask
        cnt = row.bit_count()
        if cnt == 0:
            n0 |= 1 << v
        elif cnt == 1:
            a[s.index(row.bit_length() - 1)] |= 1 << v
        elif cnt == 2:
            n2 |= 1 << v
        else:
            over |= 1 << v
    parts = [
        ("a1_plus_v2", a[0] | 1 << s[1], PartStrategy("independent", 1)),
        ("a2_plus_v3", a[1] | 1 << s[2], PartStrategy("independent", 1)),
        ("a3_plus_v1", a[2] | 1 << s[0], PartStrategy("independent", 1)),
        ("n2", n2, PartStrategy("independent", 1)),
        ("n0", n0, PartStrategy("independent", 1)),
    ]
    checks = [
        ("no-vertex-complete-to-s", True, lambda: over == 0),
        ("a1-independent", True, lambda: _independent(g, a[0])),
        ("a2-independent", True, lambda: _independent(g, a[1])),
        ("a3-independent", True, lambda: _independent(g, a[2])),
        ("n2-independent", True, lambda: _independent(g, n2)),
        ("n0-independent", True, lambda: _independent(g, n0)),
    ]
    return parts, checks


def _branch_j3(g, omega, choice):
    v1, v2 = choice.anchor[0], choice.anchor[1]
    u1, u2b, u3, u4 = choice.anchor[2], choice.anchor[3], choice.anchor[4], choice.anchor[5]
    nv1 = g.adj[v1] & ~(1 << v2)
    nv2 = g.adj[v2] & ~(g.adj[v1] | 1 << v1)
    mm = _mset(g, (v1, v2))
    tri1 = bitmask((u1, u3, u4))  # triangle inside M(v1)
    tri2 = bitmask((u1, u2b, u4))  # triangle inside M(v2)
    parts = [
        ("n_v1", nv1, PartStrategy("bipartite", 2)),
        ("n_v2_minus", nv2, PartStrategy("bipartite", 2)),
        ("m_closed_pair", mm | 1 << v1 | 1 << v2, PartStrategy("cliques", 2)),
    ]
    checks = [
        ("anchor-triangle-avoids-v1", True,
         lambda: tri1 & (g.adj[v1] | 1 << v1) == 0),
        ("anchor-triangle-avoids-v2", True,
         lambda: tri2 & (g.adj[v2] | 1 << v2) == 0),
        ("eq3:N(v1) bipartite", True,
         lambda: two_coloring(induced(g, g.adj[v1]))[0] is not None),
        ("eq3:N(v2) bipartite", True,
         lambda: two_coloring(induced(g, g.adj[v2]))[0] is not None),
    ]
    return parts, checks


def _branch_j6(g, omega, choice):
    mid, end = choice.anchor[3], choice.anchor[4]
    n_mid = g.adj[mid] & ~(1 << end)
    n_end_only = g.adj[end] & ~(g.adj[mid] | 1 << mid)
    mm = _mset(g, (mid, end))
    parts = [
        ("n_mid", n_mid, PartStrategy(
            "exact_with_budget", 3, "c4-free with omega <= 2: chi <= 3")),
        ("n_end_only", n_end_only, PartStrategy("independent", 1)),
        ("m_closed_pair", mm | 1 << mid | 1 << end, PartStrategy("cliques", 2)),
    ]
    checks = [
        ("pendant-side-independent", True, lambda: _independent(g, n_end_only)),
        ("n_mid-c4-free-omega2", False,
         lambda: _pattern_free_in(g, g.adj[mid], "c4")
         and _max_clique_in(g, g.adj[mid])[0] <= 2),
    ]
    return parts, checks


def _branch_j7(g, omega, choice):
    v = choice.anchor[0]
    if g.adj[v] == 0:
        # Every k1uk3 anchor is isolated: split isolated vertices off; the
        # rest is k1uk3-free and contains a triangle, hence 6-colorable.
        iso = bitmask(u for u in range(g.n) if g.adj[u] == 0)
        rest = g.full_mask & ~iso
        strat = PartStrategy(
            "exact_with_budget", 6,
            "isolated split: k1uk3-free remainder with a triangle")
        checks = [
            ("remainder-k1uk3-free", False,
             lambda: _pattern_free_in(g, rest, "k1uk3")),
        ]
        return [("all", g.full_mask, strat)], checks
    vp = (g.adj[v] & -g.adj[v]).bit_length() - 1
    nv = g.adj[v]
    nvp = g.adj[vp] & ~(g.adj[v] | 1 << v)
    mm = _mset(g, (v, vp))
    parts = [
        ("n_v", nv, PartStrategy("independent", 1)),
        ("n_vp_minus", nvp, PartStrategy(
            "exact_with_budget", 3, "c4-free with omega <= 2: chi <= 3")),
        ("m_pair_plus_v", mm | 1 << v, PartStrategy("cliques", 2)),
    ]
    checks = [
        ("n_v-independent", True, lambda: _independent(g, nv)),
        ("n_vp-c4-free-omega2", False,
         lambda: _pattern_free_in(g, g.adj[vp], "c4")
         and _max_clique_in(g, g.adj[vp])[0] <= 2),
    ]
    return parts, checks


def _branch_j8(g, omega, choice):
    strat = PartStrategy(
        "exact_with_budget", 6, "k1uk3-free with a triangle: chi <= 2*omega"
    )
    checks = [
        ("k1uk3-free", False, lambda: not has_induced(g, PATTERNS["k1uk3"])),
        ("has-triangle", True, lambda: has_induced(g, PATTERNS["k3"])),
    ]
    return [("all", g.full_mask, strat)], checks


_BUILDERS = {
    "B0": _branch_b0,
    "OMEGA2": _branch_omega2,
    "G1": _branch_g1,
    "G2": _branch_g2,
    "G3": _branch_g3,
    "H1": _branch_h1,
    "H2": _branch_h2,
    "H3": _branch_h3,
    "H4": _branch_h4,
    "H5": _branch_h5,
    "H6": _branch_h6,
    "J1": _branch_j1,
    "J2": _branch_j_triangle,
    "J3": _branch_j3,
    "J4": _branch_j_triangle,
    "J5": _branch_j_triangle,
    "J6": _branch_j6,
    "J7": _branch_j7,
    "J8": _branch_j8,
}


# -- the main entry points ----------------------------------------------------


def color_bounded(
    g: Graph,
    strict: bool = False,
    assert_proofs: bool = False,
    time_budget: float | None = None,
) -> ColoringCertificate:
    """Properly color g with at most 2*omega(g) colors and a full trace.

    With ``strict``, class membership is checked first (NotInClass on
    failure).  With ``assert_proofs``, every structural claim the fired
    branch relies on is re-verified and recorded.  Identical inputs give
    byte-identical certificates.
    """
    deadline = time.monotonic() + time_budget if time_budget is not None else None
    class_checked = False
    if strict:
        report = class_membership(g)
        if not report.member:
            raise NotInClass(report)
        class_checked = True

    omega, _ = clique_number(g)
    choice = find_branch(g, omega)
    part_plan, checks = _BUILDERS[choice.branch_id](g, omega, choice)

    seen = 0
    for name, mask, _ in part_plan:
        if mask & seen:
            raise StrategyPreconditionFailed("parts-disjoint", f"part {name} overlaps")
        seen |= mask
    if seen != g.full_mask:
        raise StrategyPreconditionFailed("parts-cover", "parts do not cover V(G)")

    ran: list[Assertion] = []
    for ref, always, thunk in checks:
        if always or assert_proofs:
            ok = bool(thunk())
            ran.append(Assertion(ref, ok))
            if not ok:
                raise StrategyPreconditionFailed(ref)

    colors = [0] * g.n
    base = 1
    parts_out = []
    for name, mask, strat in part_plan:
        try:
            sub, used = execute_part(g, mask, strat, base, deadline)
        except BudgetViolation as exc:
            raise BudgetViolation(name, exc.budget, exc.needed) from None
        except ColoringTimeout:
            raise ColoringTimeout(name) from None
        for v, c in sub.items():
            colors[v] = c
        parts_out.append(Part(name, mask, strat, used))
        base += used

    coloring = Coloring(tuple(colors))
    palette = coloring.palette_size
    if palette > 2 * omega:
        raise BudgetViolation("total", 2 * omega, palette)
    ok, edge = validate_coloring(g, coloring) if g.n else (True, None)
    if not ok:
        raise StrategyPreconditionFailed("proper-coloring", f"edge {edge} monochromatic")

    trace = BranchTrace(choice.branch_id, choice.anchor, tuple(parts_out), tuple(ran))
    return ColoringCertificate(coloring, omega, 2 * omega, trace, class_checked)


def check_certificate(g: Graph, cert: ColoringCertificate) -> CheckResult:
    """Independent verifier: re-validates properness, the part partition,
    per-part budgets and the total against a freshly computed omega.  Shares
    no code path with color_bounded's strategy executors."""
    colors = cert.coloring.colors
    if len(colors) != g.n:
        return CheckResult(False, "coloring length mismatch")
    if any(not isinstance(c, int) or c < 1 for c in colors):
        return CheckResult(False, "invalid color value")
    for u in range(g.n):
        row = g.adj[u]
        for v in bits(row & ~((2 << u) - 1)):
            if colors[u] == colors[v]:
                return CheckResult(False, f"edge ({u}, {v}) monochromatic")
    seen = 0
    for part in cert.trace.parts:
        if part.vertices & seen:
            return CheckResult(False, f"part {part.name} overlaps another part")
        seen |= part.vertices
        used = {colors[v] for v in bits(part.vertices)}
        if len(used) > part.strategy.budget:
            return CheckResult(
                False, f"part {part.name} uses {len(used)} colors over budget"
            )
    if seen != g.full_mask:
        return CheckResult(False, "parts do not partition V(G)")
    omega, _ = clique_number(g)
    if cert.omega != omega:
        return CheckResult(False, f"certificate omega {cert.omega} != {omega}")
    if cert.budget != 2 * omega:
        return CheckResult(False, "budget is not 2*omega")
    if max(colors, default=0) > cert.budget:
        return CheckResult(False, "palette exceeds budget")
    return CheckResult(True)


def certificate_to_json(cert: ColoringCertificate) -> str:
    obj = {
        "omega": cert.omega,
        "budget": cert.budget,
        "colors": list(cert.coloring.colors),
        "branch": cert.trace.branch_id,
        "anchor": list(cert.trace.anchor),
        "parts": [
            {
                "name": p.name,
                "vertices": bit_list(p.vertices),
                "strategy": p.strategy.kind,
                "budget": p.strategy.budget,
                "colors_used": p.colors_used,
            }
            for p in cert.trace.parts
        ],
        "assertions": [{"ref": a.ref, "ok": a.ok} for a in cert.trace.assertions],
    }
    return json.dumps(obj, separators=(",", ":"))
