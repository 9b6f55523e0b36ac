"""Word problem and ball enumeration for homogeneous presentations.

Elements of length <= horizon are enumerated stratum by stratum.  Within a
stratum the congruence generated by the (length preserving) relations is
computed by exhaustive closure: union-find over all words of that length
under single-relation rewrites at every position, in both directions.
This is exponential in the horizon but correct for every homogeneous
presentation, and desk-scale horizons are cheap.

Free groups get a separate engine: elements are freely reduced words and
length is reduced-word length, so balls are metric balls of the group.

Element ids are dense and deterministic: strata in increasing length,
lexicographically minimal canonical word within each stratum.  The partial
product table (element, generator) -> element is the only structure the
query operations need; in particular normalizing a word is a table walk
from the identity.
"""

from __future__ import annotations

import itertools
from collections import deque

from monoidgrowth.presentation import Presentation, Word


class HorizonExceededError(ValueError):
    """A word or product leaves the enumerated ball."""


class BudgetExceededError(RuntimeError):
    """The closure would enumerate more words than the configured cap;
    the horizon is too large for this presentation."""


class GcdNotUniqueError(RuntimeError):
    """The set of common left divisors has no unique maximal element,
    so the presentation violates the left-gcd condition."""


class NotADivisorError(ValueError):
    """left_quotient was called on a non-divisor."""


NO_ELEMENT = -1


class ElementStore:
    """Frozen bijection between canonical words and dense element ids for
    all elements of length <= horizon, plus the partial product table.

    All query operations are read-only; the store is safe to share.
    """

    def __init__(
        self,
        presentation: Presentation,
        horizon: int,
        words: list[Word],
        ball_sizes: list[int],
        product: list[list[int]],
    ) -> None:
        self.presentation = presentation
        self.horizon = horizon
        self.words = words
        self.ball_sizes = ball_sizes
        self.product = product
        self.index: dict[Word, int] = {w: i for i, w in enumerate(words)}
        self._predecessors: list[list[tuple[int, int]]] | None = None

    # -- size queries -------------------------------------------------

    @property
    def rank(self) -> int:
        return self.presentation.rank

    def ball_size(self, n: int) -> int:
        if not 0 <= n <= self.horizon:
            raise HorizonExceededError(f"radius {n} outside horizon {self.horizon}")
        return self.ball_sizes[n]

    def sphere_size(self, n: int) -> int:
        if n == 0:
            return 1
        return self.ball_size(n) - self.ball_size(n - 1)

    def sphere_ids(self, n: int) -> range:
        if n == 0:
            return range(0, 1)
        return range(self.ball_size(n - 1), self.ball_size(n))

    def ball_ids(self, n: int) -> range:
        return range(self.ball_size(n))

    def length(self, element: int) -> int:
        return len(self.words[element])

    def word_of(self, element: int) -> Word:
        return self.words[element]

    # -- word problem -------------------------------------------------

    def element_of(self, word: Word) -> int:
        """Class of a word, by walking the product table from the identity."""
        if len(word) > self.horizon:
            raise HorizonExceededError(
                f"word of length {len(word)} exceeds horizon {self.horizon}"
            )
        e = 0
        for g in word:
            e = self.product[e][g]
            assert e != NO_ELEMENT
        return e

    def normalize(self, word: Word) -> Word:
        """Lexicographically minimal word congruent to the input."""
        return self.words[self.element_of(word)]

    def equal(self, u: Word, v: Word) -> bool:
        return self.element_of(u) == self.element_of(v)

    def mult(self, x: int, y: int) -> int:
        """Product of two elements; fails if it leaves the horizon ball."""
        e = x
        for g in self.words[y]:
            e = self.product[e][g]
            if e == NO_ELEMENT:
                raise HorizonExceededError("product leaves the enumerated ball")
        return e

    def right_multiply(self, x: int, g: int) -> int:
        """Product with a generator, NO_ELEMENT if outside the horizon."""
        return self.product[x][g]

    # -- divisibility -------------------------------------------------

    def predecessors(self, element: int) -> list[tuple[int, int]]:
        """All (d, g) with d * g = element, from the product table."""
        if self._predecessors is None:
            rev: list[list[tuple[int, int]]] = [[] for _ in self.words]
            for src, row in enumerate(self.product):
                for g, dst in enumerate(row):
                    if dst != NO_ELEMENT:
                        rev[dst].append((src, g))
            self._predecessors = rev
        return self._predecessors[element]

    def left_divisors(self, element: int) -> set[int]:
        """All d with d * x = element for some x (within the horizon):
        backward reachability in the product table."""
        seen = {element}
        queue = deque([element])
        while queue:
            v = queue.popleft()
            for d, _ in self.predecessors(v):
                if d not in seen:
                    seen.add(d)
                    queue.append(d)
        return seen

    def gcd_l(self, elements: set[int] | list[int]) -> int:
        """Unique maximal common left divisor of a nonempty set.

        The common-divisor set is downward closed, so an element is
        maximal in it iff none of its one-step right extensions stays in
        the set.  Uniqueness failing means the presentation is outside
        the left-gcd class.
        """
        items = list(elements)
        if not items:
            raise ValueError("gcd_l of an empty set")
        common = self.left_divisors(items[0])
        for u in items[1:]:
            common &= self.left_divisors(u)
        tops = [
            d
            for d in common
            if all(t == NO_ELEMENT or t not in common for t in self.product[d])
        ]
        if len(tops) != 1:
            raise GcdNotUniqueError(
                f"common left divisors have {len(tops)} maximal elements"
            )
        return tops[0]

    def left_quotient(self, d: int, u: int) -> int:
        """The unique x with d * x = u (unique by cancellativity)."""
        if d == u:
            return 0
        parent: dict[int, tuple[int, int]] = {d: (NO_ELEMENT, NO_ELEMENT)}
        queue = deque([d])
        found = False
        while queue and not found:
            v = queue.popleft()
            for g, t in enumerate(self.product[v]):
                if t == NO_ELEMENT or t in parent:
                    continue
                parent[t] = (v, g)
                if t == u:
                    found = True
                    break
                queue.append(t)
        if not found:
            raise NotADivisorError(f"element {d} does not left-divide {u}")
        letters: list[int] = []
        v = u
        while v != d:
            v, g = parent[v]
            letters.append(g)
        return self.element_of(tuple(reversed(letters)))

    def common_right_multiple(
        self, u: int, v: int, bound: int
    ) -> tuple[int, int] | None:
        """Least-length witness (a, b) with a*u = b*v, multipliers of
        length <= bound, or None if there is none in range.

        Ties at the least common-multiple length are broken by the
        smallest target element id, then smallest multiplier ids.
        """
        lu, lv = self.length(u), self.length(v)
        if bound > self.horizon - max(lu, lv):
            raise HorizonExceededError(
                f"bound {bound} exceeds horizon {self.horizon} - max length {max(lu, lv)}"
            )
        for m in range(max(lu, lv), bound + min(lu, lv) + 1):
            left: dict[int, int] = {}
            for a in self.sphere_ids(m - lu):
                left.setdefault(self.mult(a, u), a)
            best: tuple[int, int, int] | None = None
            for b in self.sphere_ids(m - lv):
                t = self.mult(b, v)
                a = left.get(t)
                if a is not None:
                    key = (t, a, b)
                    if best is None or key < best:
                        best = key
            if best is not None:
                return best[1], best[2]
        return None

    def dead_elements(self, n: int) -> set[int]:
        """Elements of the n-ball all of whose generator extensions do not
        increase length (empty for homogeneous presentations)."""
        if n >= self.horizon:
            raise HorizonExceededError(
                f"dead-element scan at {n} needs horizon > {n}"
            )
        dead = set()
        for g_id in self.ball_ids(n):
            l = self.length(g_id)
            if all(
                t != NO_ELEMENT and self.length(t) <= l for t in self.product[g_id]
            ):
                dead.add(g_id)
        return dead


def _rewrite_neighbors(word: Word, rules: list[tuple[Word, Word]]) -> list[Word]:
    out = []
    n = len(word)
    for lhs, rhs in rules:
        m = len(lhs)
        for i in range(n - m + 1):
            if word[i : i + m] == lhs:
                out.append(word[:i] + rhs + word[i + m :])
    return out


def _closure_strata(
    p: Presentation, horizon: int, max_classes: int
) -> tuple[list[Word], list[int], list[list[int]]]:
    """Exhaustive congruence closure per length stratum."""
    rank = p.rank
    rules = []
    for lhs, rhs in p.relations:
        if lhs != rhs:
            rules.append((lhs, rhs))
            rules.append((rhs, lhs))

    words: list[Word] = [()]
    ball_sizes = [1]
    product: list[list[int]] = [[NO_ELEMENT] * rank]
    enumerated = 1

    for n in range(1, horizon + 1):
        stratum_words = rank**n
        if enumerated + stratum_words > max_classes:
            raise BudgetExceededError(
                f"stratum {n} needs {stratum_words} words; budget {max_classes}"
            )
        enumerated += stratum_words

        parent: dict[Word, Word] = {}

        def find(w: Word) -> Word:
            root = w
            while parent[root] != root:
                root = parent[root]
            while parent[w] != root:
                parent[w], w = root, parent[w]
            return root

        stratum = list(itertools.product(range(rank), repeat=n))
        for w in stratum:
            parent[w] = w
        if rules:
            for w in stratum:
                rw = find(w)
                for w2 in _rewrite_neighbors(w, rules):
                    r2 = find(w2)
                    if r2 != rw:
                        # keep the lexicographically smaller root
                        if r2 < rw:
                            parent[rw] = r2
                            rw = r2
                        else:
                            parent[r2] = rw

        reps = sorted({find(w) for w in stratum})
        offset = ball_sizes[-1]
        rep_ids = {w: offset + i for i, w in enumerate(reps)}
        words.extend(reps)
        ball_sizes.append(offset + len(reps))
        product.extend([NO_ELEMENT] * rank for _ in reps)

        # product entries from the previous stratum into this one
        lo = ball_sizes[n - 2] if n >= 2 else 0
        for e in range(lo, ball_sizes[n - 1]):
            w = words[e]
            row = product[e]
            for g in range(rank):
                row[g] = rep_ids[find(w + (g,))]

    return words, ball_sizes, product


def _free_group_strata(
    p: Presentation, horizon: int, max_classes: int
) -> tuple[list[Word], list[int], list[list[int]]]:
    """Freely reduced words by length; products reduce on the last letter."""
    rank = p.rank
    words: list[Word] = [()]
    ball_sizes = [1]
    stratum: list[Word] = [()]
    for n in range(1, horizon + 1):
        nxt = []
        for w in stratum:
            for g in range(rank):
                if w and w[-1] == p.inverse_generator(g):
                    continue
                nxt.append(w + (g,))
        if ball_sizes[-1] + len(nxt) > max_classes:
            raise BudgetExceededError(
                f"stratum {n} needs {len(nxt)} words; budget {max_classes}"
            )
        words.extend(nxt)
        ball_sizes.append(ball_sizes[-1] + len(nxt))
        stratum = nxt

    index = {w: i for i, w in enumerate(words)}
    product: list[list[int]] = []
    for w in words:
        row = []
        for g in range(rank):
            if w and w[-1] == p.inverse_generator(g):
                row.append(index[w[:-1]])
            elif len(w) < horizon:
                row.append(index[w + (g,)])
            else:
                row.append(NO_ELEMENT)
        product.append(row)
    return words, ball_sizes, product


def build_store(
    presentation: Presentation, horizon: int, max_classes: int = 10_000_000
) -> ElementStore:
    """Enumerate all elements of length <= horizon.

    max_classes caps the total number of words the closure may touch
    (an upper bound for the class count, and the quantity that actually
    explodes with the horizon).
    """
    if horizon < 0:
        raise ValueError("horizon must be nonnegative")
    if presentation.kind == "free-group":
        words, ball_sizes, product = _free_group_strata(
            presentation, horizon, max_classes
        )
    else:
        words, ball_sizes, product = _closure_strata(
            presentation, horizon, max_classes
        )
    return ElementStore(presentation, horizon, words, ball_sizes, product)
