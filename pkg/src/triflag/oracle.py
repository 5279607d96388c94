"""Brute-force cross-checks: orbit partitions, adapted-basis counts, Hasse edges.

Orbits are computed by turning each generator into a permutation of an
enumerated universe and taking connected components.  Products of universes
(triples, pairs) are handled through mixed-radix indices, so only the factors
are ever acted on directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import _kernels
from .exactlin import FullFlag, Subspace, vectors_outside
from .forms import alternating_form

__all__ = [
    "OrbitPartition", "PartitionReport", "HasseEdge", "factor_permutation", "flag_permutation",
    "orbit_partition", "compare_partitions", "count_adapted_bases", "hasse_edges",
    "fibre_flags", "fibre_edges", "load_figure", "FIGURES", "partition_witness", "edges_to_dot",
]

FIGURES = ("fig1", "fig2", "fig3", "fig4", "fig5", "fig6")


@dataclass(frozen=True)
class OrbitPartition:
    shape: tuple[int, ...]
    labels: np.ndarray

    @property
    def count(self) -> int:
        return int(self.labels.max()) + 1 if self.labels.size else 0

    def classes(self) -> list[np.ndarray]:
        order = np.argsort(self.labels, kind="stable")
        bounds = np.searchsorted(self.labels[order], np.arange(self.count + 1))
        return [order[bounds[k]:bounds[k + 1]] for k in range(self.count)]

    def sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.count)

    def unravel(self, index: int) -> tuple[int, ...]:
        return tuple(int(x) for x in np.unravel_index(index, self.shape))


@dataclass(frozen=True)
class PartitionReport:
    by_invariant: int
    by_orbit: int
    joint: int

    @property
    def equal(self) -> bool:
        return self.by_invariant == self.by_orbit == self.joint

    def __str__(self):
        verdict = "equal" if self.equal else "DIFFERENT"
        return f"{verdict}: {self.by_invariant} invariant classes, {self.by_orbit} orbits"


def factor_permutation(items: Sequence, index: dict, act: Callable) -> np.ndarray:
    """perm[k] = index of act(items[k])."""
    return np.fromiter((index[act(x)] for x in items), dtype=np.int64, count=len(items))


def flag_permutation(flags: Sequence[FullFlag], index: dict[bytes, int], g) -> np.ndarray:
    """Permutation of a flag list under g, using the batched canonical-form kernel."""
    if not flags:
        return np.zeros(0, dtype=np.int64)
    p = flags[0].p
    stack = np.stack([f.rows for f in flags])
    moved = np.einsum("kij,lj->kil", stack, np.asarray(g, dtype=np.int64)) % p
    canon = _kernels.batch_flag_canon(moved, p).astype(np.int16)
    return np.fromiter((index[c.tobytes()] for c in canon), dtype=np.int64, count=len(flags))


def orbit_partition(factors: Sequence[Sequence], gens: Sequence, key: Callable[[object], Hashable] | None = None,
                    act: Callable | None = None) -> OrbitPartition:
    """Orbits of the group generated by ``gens`` on the product of ``factors``.

    Every factor is a list of FullFlag or Subspace objects (or anything with
    ``key`` and ``act``); the group acts diagonally.
    """
    shape = tuple(len(f) for f in factors)
    total = int(np.prod(shape)) if shape else 0
    perms_per_gen = []
    for g in gens:
        perms = []
        for items in factors:
            perms.append(_permutation(items, g, key, act))
        perms_per_gen.append(perms)
    src, dst = [], []
    base = np.arange(total, dtype=np.int64)
    digits = np.unravel_index(base, shape)
    for perms in perms_per_gen:
        moved = np.ravel_multi_index(tuple(pm[d] for pm, d in zip(perms, digits)), shape)
        src.append(base)
        dst.append(moved)
    if src:
        s, d = np.concatenate(src), np.concatenate(dst)
    else:
        s = d = np.zeros(0, dtype=np.int64)
    graph = coo_matrix((np.ones(s.size, dtype=np.int8), (s, d)), shape=(total, total)).tocsr()
    _, labels = connected_components(graph, directed=True, connection="weak")
    return OrbitPartition(shape, _relabel(labels))


def _relabel(labels: np.ndarray) -> np.ndarray:
    """Renumber classes by first occurrence so labels are deterministic."""
    _, first = np.unique(labels, return_index=True)
    order = np.argsort(first)
    remap = np.empty_like(order)
    remap[order] = np.arange(order.size)
    return remap[np.searchsorted(np.unique(labels), labels)]


def _permutation(items, g, key, act) -> np.ndarray:
    if items and isinstance(items[0], FullFlag) and key is None and act is None:
        index = {f.key: k for k, f in enumerate(items)}
        return flag_permutation(items, index, g)
    key = key or (lambda x: x.key)
    act = act or (lambda x, g: x.image(g))
    index = {key(x): k for k, x in enumerate(items)}
    return factor_permutation(items, index, lambda x: key(act(x, g)))


def compare_partitions(by_invariant: Iterable[Hashable], partition: OrbitPartition) -> PartitionReport:
    inv = list(by_invariant)
    if len(inv) != partition.labels.size:
        raise ValueError("invariant list and partition have different sizes")
    joint = set(zip(inv, partition.labels.tolist()))
    return PartitionReport(len(set(inv)), partition.count, len(joint))


def partition_witness(by_invariant: Sequence[Hashable], partition: OrbitPartition) -> tuple[int, int, str] | None:
    """Two universe indices on which the invariant and the orbit partition disagree."""
    first_inv: dict[Hashable, int] = {}
    first_orb: dict[int, int] = {}
    for k, (inv, lab) in enumerate(zip(by_invariant, partition.labels.tolist())):
        j = first_inv.setdefault(inv, k)
        if partition.labels[j] != lab:
            return j, k, "same invariant, different orbits"
        j = first_orb.setdefault(lab, k)
        if by_invariant[j] != inv:
            return j, k, "same orbit, different invariants"
    return None


# ---------------------------------------------------------------- adapted bases

def count_adapted_bases(flag: FullFlag, calc: str, m_plus: int | None = None) -> int:
    """Exhaustive count of bases v_1..v_N adapted to ``flag`` for one calculus.

    Every v_k runs over all of V_k - V_{k-1}; the pairing and position
    conditions are checked directly rather than solved for.
    """
    from .glb_orbits import levi_symbol, q_symbol, sp_cmatrix

    N, p = flag.ambient, flag.p
    spaces = [flag.space(i) for i in range(N + 1)]
    pools = [vectors_outside(spaces[k], spaces[k - 1]) for k in range(1, N + 1)]

    if calc in ("sp", "q"):
        gram = alternating_form(N // 2, p).gram
        c = sp_cmatrix(flag)
        xs = set(q_symbol(flag).xs) if calc == "q" else None

        def ok(k, v, chosen):
            if xs is not None and v[0] != (1 if k in xs else 0):
                return False
            for l, w in enumerate(chosen, start=1):
                if int(w @ gram @ v % p) != c[l - 1, k - 1]:
                    return False
            return True
    elif calc == "levi":
        if m_plus is None:
            raise ValueError("the Levi calculus needs m_plus")
        sym = levi_symbol(flag, m_plus, N - m_plus)
        first_of = {j: i for i, j in sym.pairs}
        firsts = {i for i, _ in sym.pairs}

        def ok(k, v, chosen):
            head, tail = v[:m_plus].any(), v[m_plus:].any()
            if k in sym.plus:
                return not tail
            if k in sym.minus:
                return not head
            if k in firsts:
                return head and tail
            w = chosen[first_of[k] - 1].copy()
            w[m_plus:] = 0
            return np.array_equal(w, v)
    else:
        raise ValueError(f"unknown calculus {calc!r}")

    def walk(k, chosen):
        if k > N:
            return 1
        return sum(walk(k + 1, chosen + [v]) for v in pools[k - 1] if ok(k, v, chosen))

    return walk(1, [])


# ---------------------------------------------------------------- Hasse edges

@dataclass(frozen=True, order=True)
class HasseEdge:
    source: str
    index: int
    target: str

    def __str__(self):
        return f"{self.source} {self.index} {self.target}"


def hasse_edges(flags: Sequence[FullFlag], partition: OrbitPartition, names: Sequence[str],
                dims: dict[str, int], indices: Iterable[int] | None = None) -> list[HasseEdge]:
    """Edges S1 -i-> S2 with p_i(S1) = p_i(S2) and dim S2 = dim S1 + 1.

    p_i(S) is a single orbit of partial flags, so p_i(S1) = p_i(S2) exactly
    when some fibre of p_i meets both S1 and S2.
    """
    if len(partition.shape) != 1:
        raise ValueError("Hasse edges are computed on a single flag universe")
    length = flags[0].length if flags else 0
    indices = range(1, length + 1) if indices is None else indices
    labels = partition.labels
    edges = set()
    for i in indices:
        fibres: dict[tuple, set[int]] = {}
        for f, lab in zip(flags, labels.tolist()):
            fibres.setdefault(f.omit(i), set()).add(lab)
        for classes in fibres.values():
            for a in classes:
                for b in classes:
                    if dims[names[b]] == dims[names[a]] + 1:
                        edges.add(HasseEdge(names[a], i, names[b]))
    return sorted(edges)


def fibre_flags(flag: FullFlag, i: int) -> list[FullFlag]:
    """All flags that agree with ``flag`` except possibly at V_i."""
    rows = flag.rows
    a = rows[i - 1]
    if i < flag.length:
        b = rows[i]
    else:
        b = vectors_outside(Subspace.whole(flag.ambient, flag.p), flag.space(flag.length))[0]
    out = []
    for t in range(flag.p + 1):
        line, other = ((a + t * b) % flag.p, b) if t < flag.p else (b, a)
        new = np.vstack([rows[:i - 1], line, other, rows[i + 1:]])[:flag.length]
        out.append(FullFlag.from_rows(new, flag.p))
    return out


def fibre_edges(reps: dict[str, FullFlag], symbol: Callable[[FullFlag], str],
                dims: dict[str, int]) -> list[HasseEdge]:
    """Hasse edges from one representative per orbit.

    Because p_i of an orbit is one orbit, S1 -i-> S2 holds exactly when the
    p_i-fibre through a representative of S1 meets S2 and the dimensions
    differ by one.
    """
    edges = set()
    for name, flag in reps.items():
        for i in range(1, flag.length + 1):
            for other in fibre_flags(flag, i):
                tgt = symbol(other)
                if dims[tgt] == dims[name] + 1:
                    edges.add(HasseEdge(name, i, tgt))
    return sorted(edges)


def load_figure(name: str) -> list[HasseEdge]:
    """Edge list of one of the reference diagrams shipped with the package."""
    if name not in FIGURES:
        raise ValueError(f"unknown figure {name!r}; choose from {', '.join(FIGURES)}")
    text = resources.files("triflag").joinpath("fixtures", f"{name}.txt").read_text(encoding="utf8")
    out = []
    for line in text.splitlines():
        if line.strip():
            src, idx, dst = line.split()
            out.append(HasseEdge(src, int(idx), dst))
    return sorted(out)


def edges_to_dot(edges: Iterable[HasseEdge], name: str = "hasse") -> str:
    lines = [f"digraph {name} {{"]
    for e in sorted(edges):
        lines.append(f'  "{e.source}" -> "{e.target}" [label="{e.index}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
