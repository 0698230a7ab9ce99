"""Hash-consed reduced ordered binary decision diagrams.

A :class:`BddManager` owns a shared node store over a fixed variable
order and hands out :class:`NodeRef` handles.  Structurally identical
functions always map to the identical handle, so equivalence checking
is pointer comparison, satisfiability is a terminal test, and model
counting is one linear pass over the DAG.

The manager keeps a monotone counter of created nodes (terminals
excluded) so callers can attribute node construction to phases of a
larger computation.
"""

from __future__ import annotations

from fractions import Fraction


class BddError(Exception):
    """Misuse of a manager or node handle (foreign node, bad index, ...)."""


# Binary operation codes.  The six classic gate operations are
# commutative and cache on (op, min, max); the fused and-not (the
# ``diff`` operator of the usual BDD libraries, here so callers never
# have to materialize a complement copy) caches on (op, a, b) as is.
_AND, _OR, _XOR, _NAND, _NOR, _XNOR, _ANDNOT = range(7)

_OP_CODES = {
    "and": _AND,
    "or": _OR,
    "xor": _XOR,
    "nand": _NAND,
    "nor": _NOR,
    "xnor": _XNOR,
    "andnot": _ANDNOT,
}

_COMMUTATIVE = frozenset({_AND, _OR, _XOR, _NAND, _NOR, _XNOR})

# Truth tables indexed by 2*a + b.
_TABLES = {
    _AND: (0, 0, 0, 1),
    _OR: (0, 1, 1, 1),
    _XOR: (0, 1, 1, 0),
    _NAND: (1, 1, 1, 0),
    _NOR: (1, 0, 0, 0),
    _XNOR: (1, 0, 0, 1),
    _ANDNOT: (0, 0, 1, 0),
}

# When one operand is a terminal (or both operands coincide) the
# operation degenerates to a unary function of the other operand.
_U_CONST0, _U_CONST1, _U_SAME, _U_NEG = range(4)


def _unary_kind(when0: int, when1: int) -> int:
    if when0 == when1:
        return _U_CONST1 if when0 else _U_CONST0
    return _U_SAME if when1 else _U_NEG


# _LEFT[op][v] is the unary residual of op(v, x) for terminal v,
# _RIGHT[op][v] that of op(x, v); _DIAG[op] the residual on op(x, x).
_LEFT = {
    op: (_unary_kind(t[0], t[1]), _unary_kind(t[2], t[3]))
    for op, t in _TABLES.items()
}
_RIGHT = {
    op: (_unary_kind(t[0], t[2]), _unary_kind(t[1], t[3]))
    for op, t in _TABLES.items()
}
_DIAG = {op: _unary_kind(t[0], t[3]) for op, t in _TABLES.items()}


class NodeRef:
    """Opaque handle to one canonical node of a :class:`BddManager`.

    Handles are interned: building the same function twice yields the
    identical object, so ``a is b`` and ``a == b`` both decide
    functional equivalence within one manager.
    """

    __slots__ = ("manager", "index")

    def __init__(self, manager: "BddManager", index: int):
        self.manager = manager
        self.index = index

    def __repr__(self):
        if self.index == 0:
            return "<bdd FALSE>"
        if self.index == 1:
            return "<bdd TRUE>"
        return f"<bdd node {self.index} on x{self.manager._level[self.index]}>"

    # Operator sugar; the owning manager does the real work.
    def __invert__(self):
        return self.manager.not_(self)

    def __and__(self, other):
        return self.manager.apply("and", self, other)

    def __or__(self, other):
        return self.manager.apply("or", self, other)

    def __xor__(self, other):
        return self.manager.apply("xor", self, other)


class BddManager:
    """Shared store of reduced ordered BDD nodes.

    The variable order is fixed at construction: variable ``i`` sits at
    level ``i``.  ``cache_capacity`` bounds the binary-operation cache
    only (the node store itself is never evicted): when set, the cache
    becomes a fixed table of that many slots with overwrite on
    collision, the way the classic C libraries behave.  By default the
    cache is an unbounded dict, which is fastest and recomputes
    nothing.

    A manager and all of its handles are confined to a single logical
    thread; parallel workloads run one manager per worker.
    """

    def __init__(self, var_count: int, cache_capacity: int | None = None):
        if var_count < 0:
            raise BddError("variable count must be non-negative")
        if cache_capacity is not None and cache_capacity < 1:
            raise BddError("cache capacity must be positive or None")
        self.var_count = var_count
        self._cache_capacity = cache_capacity
        # Parallel node arrays; slots 0 and 1 are the terminals, parked
        # at the leaf level below every variable.
        self._level = [var_count, var_count]
        self._low = [0, 1]
        self._high = [0, 1]
        self._unique: dict[tuple[int, int, int], int] = {}
        self._apply_cache: dict[tuple[int, int, int], int] = {}
        self._apply_slots: list[tuple[tuple[int, int, int], int] | None] | None = (
            None if cache_capacity is None else [None] * cache_capacity
        )
        self._not_cache: dict[int, int] = {}
        self._count_cache: dict[int, int] = {0: 0, 1: 1}
        self._count2_cache: dict[tuple[int, int, int], int] = {}
        self._created = 0
        self._refs = [NodeRef(self, 0), NodeRef(self, 1)]
        self.false = self._refs[0]
        self.true = self._refs[1]

    # -- node construction -------------------------------------------------

    def var(self, index: int) -> NodeRef:
        """The projection function of variable ``index``."""
        if not 0 <= index < self.var_count:
            raise BddError(
                f"variable index {index} out of range "
                f"(manager has {self.var_count} variables)"
            )
        return self._refs[self._mk(index, 0, 1)]

    def apply(self, op: str, a: NodeRef, b: NodeRef) -> NodeRef:
        """Combine two functions.

        Operations: ``and``, ``or``, ``xor``, ``nand``, ``nor``,
        ``xnor``, plus the fused ``andnot`` (a AND NOT b).
        """
        try:
            code = _OP_CODES[op.lower()]
        except (KeyError, AttributeError):
            raise BddError(f"unknown operation {op!r}") from None
        return self._refs[self._apply(code, self._unwrap(a), self._unwrap(b))]

    def not_(self, a: NodeRef) -> NodeRef:
        """Complement of a function."""
        return self._refs[self._not(self._unwrap(a))]

    # -- queries ------------------------------------------------------------

    def is_sat(self, a: NodeRef) -> bool:
        """Whether any input vector makes the function true."""
        return self._unwrap(a) != 0

    def sat_count(self, a: NodeRef) -> int:
        """Number of satisfying assignments over all manager variables."""
        u = self._unwrap(a)
        return self._count(u) << self._level[u]

    def sat_prob(self, a: NodeRef) -> Fraction:
        """Exact probability that a uniformly random assignment satisfies ``a``."""
        return Fraction(self.sat_count(a), 1 << self.var_count)

    def sat_count_and(self, a: NodeRef, b: NodeRef) -> int:
        """Model count of ``a AND b`` without materializing the conjunction.

        A pairwise traversal of both DAGs; equals
        ``sat_count(apply('and', a, b))`` but creates no nodes.
        """
        return self._count_pair(_AND, self._unwrap(a), self._unwrap(b))

    def sat_count_andnot(self, a: NodeRef, b: NodeRef) -> int:
        """Model count of ``a AND NOT b`` without materializing it."""
        return self._count_pair(_ANDNOT, self._unwrap(a), self._unwrap(b))

    def evaluate(self, a: NodeRef, assignment) -> bool:
        """Evaluate under a full assignment (sequence of ``var_count`` bits)."""
        if len(assignment) != self.var_count:
            raise BddError(
                f"assignment has {len(assignment)} bits, expected {self.var_count}"
            )
        u = self._unwrap(a)
        high, low, level = self._high, self._low, self._level
        while u > 1:
            u = high[u] if assignment[level[u]] else low[u]
        return u == 1

    def pick_assignment(self, a: NodeRef) -> list[int]:
        """One satisfying assignment; variables off the chosen path get 0."""
        u = self._unwrap(a)
        if u == 0:
            raise BddError("function is unsatisfiable")
        bits = [0] * self.var_count
        while u > 1:
            # Every non-FALSE node has a satisfiable child (reducedness).
            low = self._low[u]
            if low == 0:
                bits[self._level[u]] = 1
                u = self._high[u]
            else:
                u = low
        return bits

    # -- bookkeeping ----------------------------------------------------------

    def nodes_created(self) -> int:
        """Internal nodes created since construction or the last reset."""
        return self._created

    def reset_node_counter(self) -> None:
        self._created = 0

    @property
    def node_count(self) -> int:
        """Internal nodes currently in the unique table."""
        return len(self._level) - 2

    def clear_caches(self) -> None:
        """Drop the operation caches (the node store is untouched)."""
        self._apply_cache.clear()
        if self._apply_slots is not None:
            self._apply_slots = [None] * self._cache_capacity
        self._not_cache.clear()

    # -- internals ------------------------------------------------------------

    def _unwrap(self, ref) -> int:
        if type(ref) is not NodeRef or ref.manager is not self:
            raise BddError("node handle does not belong to this manager")
        return ref.index

    def _mk(self, level: int, low: int, high: int) -> int:
        if low == high:
            return low
        key = (level, low, high)
        u = self._unique.get(key)
        if u is None:
            u = len(self._level)
            self._level.append(level)
            self._low.append(low)
            self._high.append(high)
            self._unique[key] = u
            self._refs.append(NodeRef(self, u))
            self._created += 1
        return u

    def _unary(self, kind: int, u: int) -> int:
        if kind == _U_SAME:
            return u
        if kind == _U_CONST0:
            return 0
        if kind == _U_CONST1:
            return 1
        return self._not(u)

    def _apply(self, op: int, a: int, b: int) -> int:
        if a < 2:
            return self._unary(_LEFT[op][a], b)
        if b < 2:
            return self._unary(_RIGHT[op][b], a)
        if a == b:
            return self._unary(_DIAG[op], a)
        if a > b and op in _COMMUTATIVE:
            a, b = b, a
        key = (op, a, b)
        slots = self._apply_slots
        if slots is None:
            r = self._apply_cache.get(key)
            if r is not None:
                return r
        else:
            slot = slots[hash(key) % self._cache_capacity]
            if slot is not None and slot[0] == key:
                return slot[1]
        level = self._level
        la, lb = level[a], level[b]
        lv = la if la < lb else lb
        if la == lv:
            a0, a1 = self._low[a], self._high[a]
        else:
            a0 = a1 = a
        if lb == lv:
            b0, b1 = self._low[b], self._high[b]
        else:
            b0 = b1 = b
        r = self._mk(lv, self._apply(op, a0, b0), self._apply(op, a1, b1))
        if slots is None:
            self._apply_cache[key] = r
        else:
            slots[hash(key) % self._cache_capacity] = (key, r)
        return r

    def _not(self, a: int) -> int:
        if a < 2:
            return 1 - a
        cache = self._not_cache
        r = cache.get(a)
        if r is None:
            r = self._mk(
                self._level[a], self._not(self._low[a]), self._not(self._high[a])
            )
            cache[a] = r
        return r

    def _count(self, u: int) -> int:
        # Satisfying assignments over the variables at or below u's level;
        # sat_count() scales by the levels above the root.
        cache = self._count_cache
        r = cache.get(u)
        if r is None:
            level = self._level
            low, high = self._low[u], self._high[u]
            r = (self._count(low) << (level[low] - level[u] - 1)) + (
                self._count(high) << (level[high] - level[u] - 1)
            )
            cache[u] = r
        return r

    def _count_pair(self, op: int, a: int, b: int) -> int:
        level = self._level
        return self._count2(op, a, b) << min(level[a], level[b])

    def _count2(self, op: int, u: int, v: int) -> int:
        # Counts over the variables at or below min(level(u), level(v)).
        level = self._level
        if u < 2:
            if v < 2:
                return _TABLES[op][2 * u + v]
            return self._count_unary(_LEFT[op][u], v)
        if v < 2:
            return self._count_unary(_RIGHT[op][v], u)
        if u == v:
            return self._count_unary(_DIAG[op], u)
        if u > v and op in _COMMUTATIVE:
            u, v = v, u
        key = (op, u, v)
        cache = self._count2_cache
        r = cache.get(key)
        if r is not None:
            return r
        lu, lv = level[u], level[v]
        lv_min = lu if lu < lv else lv
        if lu == lv_min:
            u0, u1 = self._low[u], self._high[u]
        else:
            u0 = u1 = u
        if lv == lv_min:
            v0, v1 = self._low[v], self._high[v]
        else:
            v0 = v1 = v
        r = (
            self._count2(op, u0, v0)
            << (min(level[u0], level[v0]) - lv_min - 1)
        ) + (
            self._count2(op, u1, v1)
            << (min(level[u1], level[v1]) - lv_min - 1)
        )
        cache[key] = r
        return r

    def _count_unary(self, kind: int, u: int) -> int:
        # Count of the residual unary function, over levels >= level(u).
        if kind == _U_CONST0:
            return 0
        if kind == _U_CONST1:
            return 1 << (self.var_count - self._level[u])
        if kind == _U_SAME:
            return self._count(u)
        return (1 << (self.var_count - self._level[u])) - self._count(u)
