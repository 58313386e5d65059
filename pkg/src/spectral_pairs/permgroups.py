"""Small permutation groups: closure, transitivity, block systems.

Groups here are monodromy/Galois groups of spectral covers, whose degree is
the spectral rank, so elements are simply enumerated.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError

Perm = tuple[int, ...]


def check_perm(p: Sequence[int]) -> Perm:
    p = tuple(int(i) for i in p)
    if sorted(p) != list(range(len(p))):
        raise ValueError(f"not a permutation: {list(p)}")
    return p


def compose(p: Perm, q: Perm) -> Perm:
    """``p`` after ``q``."""
    return tuple(p[i] for i in q)


def identity(n: int) -> Perm:
    return tuple(range(n))


def from_cycles(n: int, *cycles: Iterable[int]) -> Perm:
    img = list(range(n))
    for cyc in cycles:
        cyc = list(cyc)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a] = b
    return check_perm(img)


def cycle_type(p: Perm) -> list[int]:
    seen, out = set(), []
    for i in range(len(p)):
        if i in seen:
            continue
        n, j = 0, i
        while j not in seen:
            seen.add(j)
            j = p[j]
            n += 1
        out.append(n)
    return sorted(out, reverse=True)


def _degree(gens: Sequence[Perm]) -> int:
    if not gens:
        raise ValueError("at least one generator is required")
    n = len(gens[0])
    if any(len(g) != n for g in gens):
        raise ValueError("generators act on different numbers of symbols")
    return n


def group_elements(gens: Sequence[Sequence[int]], bound: int = 100_000) -> list[Perm]:
    gens = [check_perm(g) for g in gens]
    n = _degree(gens)
    e = identity(n)
    seen = {e}
    out = [e]
    queue = deque([e])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = compose(s, g)
            if h not in seen:
                seen.add(h)
                out.append(h)
                if len(out) > bound:
                    raise DomainError(f"group too large: more than {bound} elements")
                queue.append(h)
    return out


def orbit(gens: Sequence[Perm], a: int) -> set[int]:
    seen, stack = {a}, [a]
    while stack:
        x = stack.pop()
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def is_transitive(gens: Sequence[Sequence[int]]) -> bool:
    gens = [check_perm(g) for g in gens]
    return len(orbit(gens, 0)) == _degree(gens)


@dataclass(frozen=True)
class BlockSystem:
    blocks: tuple[tuple[int, ...], ...]

    @property
    def block_size(self) -> int:
        return len(self.blocks[0])

    def is_preserved_by(self, g: Perm) -> bool:
        index = {x: i for i, b in enumerate(self.blocks) for x in b}
        for b in self.blocks:
            if len({index[g[x]] for x in b}) != 1:
                return False
        return True


def _canonical(classes: Iterable[Iterable[int]]) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(tuple(sorted(c)) for c in classes))


def minimal_blocks(gens: Sequence[Sequence[int]], a: int, b: int) -> BlockSystem | None:
    """Finest block system with ``a`` and ``b`` in one block (Atkinson's
    union-find closure). Returns None when that system is a single block."""
    gens = [check_perm(g) for g in gens]
    n = _degree(gens)
    if not is_transitive(gens):
        raise DomainError("imprimitivity undefined for an intransitive group")
    if a == b or not (0 <= a < n and 0 <= b < n):
        raise ValueError("need two distinct symbols")
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    pending = [(a, b)]
    parent[find(b)] = find(a)
    while pending:
        x, y = pending.pop()
        for g in gens:
            u, v = find(g[x]), find(g[y])
            if u != v:
                parent[v] = u
                pending.append((u, v))
    classes: dict[int, list[int]] = {}
    for x in range(n):
        classes.setdefault(find(x), []).append(x)
    if len(classes) == 1:
        return None
    return BlockSystem(_canonical(classes.values()))


@dataclass(frozen=True)
class Imprimitivity:
    verdict: bool
    witness: BlockSystem | None = None


def is_imprimitive(gens: Sequence[Sequence[int]]) -> Imprimitivity:
    gens = [check_perm(g) for g in gens]
    n = _degree(gens)
    if not is_transitive(gens):
        raise DomainError("imprimitivity undefined for an intransitive group")
    for b in range(1, n):
        system = minimal_blocks(gens, 0, b)
        if system is not None:
            return Imprimitivity(True, system)
    return Imprimitivity(False)


def block_systems(gens: Sequence[Sequence[int]]) -> list[BlockSystem]:
    """Distinct nontrivial systems of the form ``minimal_blocks(0, b)``.

    For cyclic groups this is every block system."""
    n = _degree([check_perm(g) for g in gens])
    found = {}
    for b in range(1, n):
        system = minimal_blocks(gens, 0, b)
        if system is not None:
            found[system.blocks] = system
    return sorted(found.values(), key=lambda s: (s.block_size, s.blocks))


def disjoint_pair_blocks(l1: int, l2: int) -> tuple[Perm, BlockSystem]:
    """sigma = (cycle of length l1)(disjoint cycle of length l2) in S_r with
    r = lcm(l1, l2), together with a block system it preserves.

    With q = gcd(l1, l2) > 1 every cycle is cut into residue classes of size q
    and the fixed points are grouped q at a time; with q = 1 each cycle's
    support, padded with fixed points to size max(l1, l2), is a block."""
    if l1 < 2 or l2 < 2:
        raise ValueError("both cycles need length >= 2")
    r = math.lcm(l1, l2)
    if l1 + l2 > r:
        raise DomainError(f"cycles of lengths {l1}, {l2} do not fit in S_{r}")
    c1, c2 = list(range(l1)), list(range(l1, l1 + l2))
    fixed = list(range(l1 + l2, r))
    sigma = from_cycles(r, c1, c2)
    q = math.gcd(l1, l2)
    if q > 1:
        blocks = []
        for cyc in (c1, c2):
            step = len(cyc) // q
            blocks += [cyc[i::step] for i in range(step)]
        blocks += [fixed[i:i + q] for i in range(0, len(fixed), q)]
    else:
        big = max(l1, l2)
        short, long_ = (c2, c1) if l1 > l2 else (c1, c2)
        pad = big - len(short)
        blocks = [long_, short + fixed[:pad]]
        rest = fixed[pad:]
        blocks += [rest[i:i + big] for i in range(0, len(rest), big)]
    return sigma, BlockSystem(_canonical(blocks))


@dataclass(frozen=True)
class CyclicClassification:
    is_cyclic_order_r_transitive: bool
    is_r_cycle_generated: bool


def _order(p: Perm) -> int:
    e, q, k = identity(len(p)), p, 1
    while q != e:
        q = compose(p, q)
        k += 1
    return k


def cyclic_transitive_classification(gens: Sequence[Sequence[int]], r: int) -> CyclicClassification:
    gens = [check_perm(g) for g in gens]
    if _degree(gens) != r:
        raise ValueError(f"generators must act on {r} symbols")
    elements = group_elements(gens)
    cyclic = len(elements) == r and any(_order(g) == r for g in elements)
    transitive = is_transitive(gens)
    r_cycle = any(cycle_type(g) == [r] for g in elements) and len(elements) == r
    result = CyclicClassification(cyclic and transitive, r_cycle)
    if result.is_cyclic_order_r_transitive and not result.is_r_cycle_generated:
        raise AssertionError(f"transitive cyclic group of order {r} without an {r}-cycle: {gens}")
    return result


def r_cycle(r: int) -> Perm:
    return tuple((i + 1) % r for i in range(r))


@dataclass(frozen=True)
class Factorizability:
    verdict: bool
    factorizations: list[tuple[int, int]]
    witnesses: list[BlockSystem]


def cyclic_cover_factorizable(r: int) -> Factorizability:
    """Ritt's criterion for an r:1 cover with Galois group generated by an
    r-cycle. A block of size m is a fibre of the degree-m map f in
    pi = g o f, so each block system yields the factorization (m, r/m)."""
    if r < 2:
        raise DomainError("a cover of degree < 2 has nothing to factor")
    gens = [r_cycle(r)]
    verdict = is_imprimitive(gens).verdict
    systems = block_systems(gens) if verdict else []
    facts = sorted({(s.block_size, r // s.block_size) for s in systems})
    return Factorizability(verdict, facts, systems)
