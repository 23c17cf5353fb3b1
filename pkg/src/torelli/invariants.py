"""Exact tensor computations over a 2g-dimensional bilinear space.

Small dense tensors with rational entries serve as an independent
check on the combinatorial calculus: matchings evaluate to invariant
tensors built from the form's copairing, matchings span the invariant
subspace (injectively once 2g reaches the set size), and the same
contract-relabel-insert recipe that acts on labelled partitions acts
here through honest linear maps.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, Sequence

from .characters import NonIntegralMultiplicity, murnaghan_nakayama
from .partitions import Partition, partitions_of, z_lambda
from .setparts import BrauerMorphism, _perm_from_cycle_type, _perm_parity

TENSOR_ENTRY_CAP = 10**7


class NotPerfect(ValueError):
    """The matching misses or repeats elements of the index set."""


def _identity(size: int) -> list[list[Fraction]]:
    return [
        [Fraction(1) if i == j else Fraction(0) for j in range(size)]
        for i in range(size)
    ]


def _invert(matrix: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    size = len(matrix)
    work = [list(row) for row in matrix]
    inv = _identity(size)
    for col in range(size):
        pivot = next(
            (r for r in range(col, size) if work[r][col]), None
        )
        if pivot is None:
            raise ValueError("matrix is singular")
        work[col], work[pivot] = work[pivot], work[col]
        inv[col], inv[pivot] = inv[pivot], inv[col]
        scale = work[col][col]
        work[col] = [v / scale for v in work[col]]
        inv[col] = [v / scale for v in inv[col]]
        for r in range(size):
            if r != col and work[r][col]:
                factor = work[r][col]
                work[r] = [v - factor * w for v, w in zip(work[r], work[col])]
                inv[r] = [v - factor * w for v, w in zip(inv[r], inv[col])]
    return inv


def _row_reduce(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and its pivot columns."""
    if not rows:
        return [], []
    ncols = len(rows[0])
    work = [list(r) for r in rows]
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        pivot = next((r for r in range(row, len(work)) if work[r][col]), None)
        if pivot is None:
            continue
        work[row], work[pivot] = work[pivot], work[row]
        scale = work[row][col]
        work[row] = [v / scale for v in work[row]]
        for r in range(len(work)):
            if r != row and work[r][col]:
                factor = work[r][col]
                work[r] = [v - factor * w for v, w in zip(work[r], work[row])]
        pivots.append(col)
        row += 1
        if row == len(work):
            break
    return work[:row], pivots


def _rank(rows: list[list[Fraction]]) -> int:
    return len(_row_reduce(rows)[0])


def _kernel_basis(
    rows: list[list[Fraction]], ncols: int
) -> tuple[list[list[Fraction]], list[int]]:
    """Basis of the joint kernel, one vector per free column, plus the
    free columns themselves (where each basis vector has its 1)."""
    reduced, pivots = _row_reduce(rows)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for r, p in zip(reduced, pivots):
            vec[p] = -r[f]
        basis.append(vec)
    return basis, free


class EpsForm:
    """A nondegenerate epsilon-symmetric form on 2g basis vectors.

    The symplectic representative pairs a_i with a_{g+i} with value +1
    one way and -1 the other; the orthogonal one is hyperbolic.  The
    dual basis satisfies lam(a_i_sharp, a_j) = delta_ij, and omega is
    the copairing with entries dual[x][y].
    """

    __slots__ = ("g", "epsilon", "dim", "gram", "dual")

    def __init__(self, g: int, epsilon: int) -> None:
        if g < 1:
            raise ValueError("genus must be positive")
        if epsilon not in (1, -1):
            raise ValueError("epsilon must be +1 or -1")
        self.g = int(g)
        self.epsilon = int(epsilon)
        self.dim = 2 * g
        gram = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for i in range(g):
            gram[i][g + i] = Fraction(1)
            gram[g + i][i] = Fraction(epsilon)
        self.gram = tuple(tuple(row) for row in gram)
        self.dual = tuple(tuple(row) for row in _invert(gram))

    def lam(self, x: int, y: int) -> Fraction:
        return self.gram[x][y]

    def omega_entry(self, x: int, y: int) -> Fraction:
        return self.dual[x][y]

    def sharp(self, i: int) -> list[Fraction]:
        """Coordinates of a_i_sharp in the basis."""
        return list(self.dual[i])

    def __repr__(self) -> str:
        return f"EpsForm(g={self.g}, epsilon={self.epsilon:+d})"


class DenseTensor:
    """Exact tensor over positions carrying one index each."""

    __slots__ = ("dim", "positions", "entries")

    def __init__(
        self,
        dim: int,
        positions: Iterable[int],
        entries: Sequence[Fraction] | None = None,
    ) -> None:
        self.dim = int(dim)
        self.positions = tuple(sorted(int(p) for p in positions))
        if len(set(self.positions)) != len(self.positions):
            raise ValueError("positions must be distinct")
        size = self.dim ** len(self.positions)
        if size > TENSOR_ENTRY_CAP:
            raise ValueError(
                f"tensor with {size} entries exceeds the oracle cap"
            )
        if entries is None:
            self.entries = [Fraction(0)] * size
        else:
            self.entries = [Fraction(v) for v in entries]
            if len(self.entries) != size:
                raise ValueError("entry count does not match the shape")

    def index(self, assignment: Sequence[int]) -> int:
        idx = 0
        for v in assignment:
            idx = idx * self.dim + v
        return idx

    def get(self, assignment: Sequence[int]) -> Fraction:
        return self.entries[self.index(assignment)]

    def set(self, assignment: Sequence[int], value) -> None:
        self.entries[self.index(assignment)] = Fraction(value)

    def assignments(self):
        return product(range(self.dim), repeat=len(self.positions))

    @staticmethod
    def scalar(dim: int, value) -> "DenseTensor":
        return DenseTensor(dim, (), [Fraction(value)])

    def scale(self, c) -> "DenseTensor":
        return DenseTensor(
            self.dim, self.positions, [Fraction(c) * v for v in self.entries]
        )

    def __add__(self, other: "DenseTensor") -> "DenseTensor":
        if (self.dim, self.positions) != (other.dim, other.positions):
            raise ValueError("tensors live on different shapes")
        return DenseTensor(
            self.dim,
            self.positions,
            [a + b for a, b in zip(self.entries, other.entries)],
        )

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DenseTensor):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.positions == other.positions
            and self.entries == other.entries
        )

    def __repr__(self) -> str:
        nz = sum(1 for v in self.entries if v)
        return f"DenseTensor(dim={self.dim}, positions={self.positions}, nonzero={nz})"


def omega_m(matching: Iterable[tuple[int, int]], form: EpsForm) -> DenseTensor:
    """Invariant tensor of an ordered perfect matching."""
    pairs = [(int(a), int(b)) for a, b in matching]
    elems = [x for pair in pairs for x in pair]
    if len(set(elems)) != len(elems):
        raise NotPerfect("matching repeats an element")
    out = DenseTensor(form.dim, elems)
    slot = {p: k for k, p in enumerate(out.positions)}
    for assignment in out.assignments():
        value = Fraction(1)
        for a, b in pairs:
            value *= form.dual[assignment[slot[a]]][assignment[slot[b]]]
            if not value:
                break
        if value:
            out.entries[out.index(assignment)] = value
    return out


def perfect_matchings(elems: Iterable[int]):
    """Canonically oriented perfect matchings: each pair starts at the
    least remaining element."""
    elems = sorted(elems)
    if len(elems) % 2:
        raise NotPerfect("odd set has no perfect matching")

    def rec(rest: tuple[int, ...]):
        if not rest:
            yield ()
            return
        a = rest[0]
        for k in range(1, len(rest)):
            b = rest[k]
            remaining = rest[1:k] + rest[k + 1:]
            for tail in rec(remaining):
                yield ((a, b),) + tail

    return list(rec(tuple(elems)))


def matching_span_rank(S, g: int, epsilon: int) -> tuple[int, int]:
    """Exact rank of the matching invariants, with the dimension of the
    formal matching space they come from."""
    if isinstance(S, int):
        elems = list(range(1, S + 1))
    else:
        elems = sorted(int(x) for x in S)
    if len(elems) % 2:
        raise ValueError("the set size must be even")
    form = EpsForm(g, epsilon)
    matchings = perfect_matchings(elems)
    vectors = [omega_m(m, form).entries for m in matchings]
    return _rank(vectors), len(matchings)


def K_on_morphism(
    morphism: BrauerMorphism, form: EpsForm, signed: bool = False
) -> Callable[[DenseTensor], DenseTensor]:
    """Linear map realizing a matching morphism on tensors.

    Source pairs contract through the form, the bijection relabels the
    surviving positions, and target pairs insert the copairing.  The
    signed flavor multiplies by the parities of the words that bring
    the matched pairs to the front on each side.
    """
    src = morphism.source
    matched_s = {x for pair in morphism.source_pairs for x in pair}
    rest = [x for x in src if x not in matched_s]
    mid_positions = sorted(morphism.bij[x] for x in rest)

    sign = 1
    if signed:
        word = [x for pair in morphism.source_pairs for x in pair] + rest
        if _perm_parity(word):
            sign = -sign
        word_t = [x for pair in morphism.target_pairs for x in pair]
        word_t += [morphism.bij[x] for x in rest]
        if _perm_parity(word_t):
            sign = -sign

    def apply(tensor: DenseTensor) -> DenseTensor:
        if tensor.positions != src:
            raise ValueError("tensor does not live on the morphism source")
        if tensor.dim != form.dim:
            raise ValueError("tensor dimension does not match the form")
        slot = {p: k for k, p in enumerate(src)}
        mid = DenseTensor(form.dim, mid_positions)
        mid_slot = {p: k for k, p in enumerate(mid.positions)}
        for assignment in tensor.assignments():
            value = tensor.entries[tensor.index(assignment)]
            if not value:
                continue
            for a, b in morphism.source_pairs:
                value *= form.gram[assignment[slot[a]]][assignment[slot[b]]]
                if not value:
                    break
            if not value:
                continue
            key = [0] * len(mid.positions)
            for x in rest:
                key[mid_slot[morphism.bij[x]]] = assignment[slot[x]]
            mid.entries[mid.index(key)] += value
        if not morphism.target_pairs:
            return mid.scale(sign) if sign != 1 else mid
        out = DenseTensor(form.dim, morphism.target)
        out_slot = {p: k for k, p in enumerate(out.positions)}
        for assignment in out.assignments():
            key = [assignment[out_slot[p]] for p in mid.positions]
            value = mid.entries[mid.index(key)]
            if not value:
                continue
            for c, d in morphism.target_pairs:
                value *= form.dual[assignment[out_slot[c]]][assignment[out_slot[d]]]
                if not value:
                    break
            if value:
                out.entries[out.index(assignment)] = sign * value
        return out

    return apply


def contraction_rows(q: int, form: EpsForm) -> list[list[Fraction]]:
    """Constraint matrix whose kernel is the harmonic subspace."""
    d = form.dim
    size = d**q
    if size > TENSOR_ENTRY_CAP:
        raise ValueError("tensor power exceeds the oracle cap")
    rows: list[list[Fraction]] = []
    for i in range(q):
        for j in range(i + 1, q):
            others = [k for k in range(q) if k not in (i, j)]
            for rest in product(range(d), repeat=len(others)):
                row = [Fraction(0)] * size
                for x, y in product(range(d), repeat=2):
                    if not form.gram[x][y]:
                        continue
                    full = [0] * q
                    for pos, v in zip(others, rest):
                        full[pos] = v
                    full[i] = x
                    full[j] = y
                    idx = 0
                    for v in full:
                        idx = idx * d + v
                    row[idx] += form.gram[x][y]
                rows.append(row)
    return rows


def harmonic_projection(q: int, form: EpsForm) -> list[DenseTensor]:
    """Exact basis of the joint kernel of all pairwise contractions."""
    if q < 0:
        raise ValueError("tensor power must be nonnegative")
    if q == 0:
        return [DenseTensor.scalar(form.dim, 1)]
    basis, _ = _kernel_basis(contraction_rows(q, form), form.dim**q)
    return [DenseTensor(form.dim, range(1, q + 1), vec) for vec in basis]


def harmonic_multiplicity(lam, form: EpsForm) -> int:
    """Multiplicity of one symmetric-group irreducible inside the
    harmonic subspace, computed from exact traces."""
    lam = Partition(lam)
    q = sum(lam)
    if q == 0:
        return 1
    d = form.dim
    basis, free = _kernel_basis(contraction_rows(q, form), d**q)
    if not basis:
        return 0
    total = Fraction(0)
    for mu in partitions_of(q):
        sigma = _perm_from_cycle_type(q, mu)
        perm = [sigma[k + 1] - 1 for k in range(q)]
        strides = [d ** (q - 1 - k) for k in range(q)]
        trace = Fraction(0)
        for vec, f in zip(basis, free):
            digits = []
            x = f
            for s in strides:
                digits.append(x // s)
                x %= s
            moved = sum(digits[perm[k]] * strides[k] for k in range(q))
            trace += vec[moved]
        total += Fraction(murnaghan_nakayama(lam, mu), z_lambda(mu)) * trace
    if total.denominator != 1:
        raise NonIntegralMultiplicity(
            f"trace average for {lam} is {total}"
        )
    return int(total)
