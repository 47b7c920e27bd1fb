"""Group presentations: free-reduction, Tietze simplification, Smith normal
form of the relator-exponent matrix, abelian invariants."""

from __future__ import annotations

import math
from dataclasses import dataclass

# A letter is (symbol, +1) or (symbol, -1); a word is a tuple of letters.
Letter = tuple[str, int]
Rword = tuple[Letter, ...]


def free_reduce(word: Rword) -> Rword:
    out: list[Letter] = []
    for sym, e in word:
        if out and out[-1][0] == sym and out[-1][1] == -e:
            out.pop()
        else:
            out.append((sym, e))
    return tuple(out)


def invert(word: Rword) -> Rword:
    return tuple((sym, -e) for sym, e in reversed(word))


def word_from_string(text: str) -> Rword:
    """Parse words like "a b^-1 a^2" (whitespace separated)."""
    out = []
    for chunk in text.split():
        if "^" in chunk:
            sym, exp = chunk.split("^")
            exp = int(exp)
        else:
            sym, exp = chunk, 1
        e = 1 if exp > 0 else -1
        out.extend([(sym, e)] * abs(exp))
    return tuple(out)


def word_to_string(word: Rword) -> str:
    if not word:
        return "1"
    parts = []
    i = 0
    while i < len(word):
        sym, e = word[i]
        j = i
        while j < len(word) and word[j] == (sym, e):
            j += 1
        count = (j - i) * e
        parts.append(sym if count == 1 else f"{sym}^{count}")
        i = j
    return " ".join(parts)


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Rword, ...]

    def __post_init__(self):
        gens = set(self.generators)
        if len(gens) != len(self.generators):
            raise ValueError("duplicate generator symbols")
        for rel in self.relators:
            for sym, e in rel:
                if sym not in gens:
                    raise ValueError(f"relator uses undeclared generator {sym!r}")
                if e not in (1, -1):
                    raise ValueError("letters must carry exponent +1 or -1")

    def to_text(self) -> str:
        """Plain-text export: generator line, then one relator per line."""
        lines = [", ".join(self.generators)]
        for rel in self.relators:
            lines.append(word_to_string(rel))
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "generators": list(self.generators),
            "relators": [word_to_string(r) for r in self.relators],
        }


def _canonical_relator(word: Rword) -> Rword:
    """Least cyclic rotation of the word or its inverse (duplicate detection)."""
    word = free_reduce(word)
    if not word:
        return ()
    candidates = []
    for w in (word, invert(word)):
        for k in range(len(w)):
            candidates.append(w[k:] + w[:k])
    return min(candidates)


def _substitute(word: Rword, sym: str, replacement: Rword) -> Rword:
    out: list[Letter] = []
    for s, e in word:
        if s == sym:
            out.extend(replacement if e == 1 else invert(replacement))
        else:
            out.append((s, e))
    return free_reduce(tuple(out))


def tietze_simplify(p: Presentation, budget: int = 1000) -> Presentation:
    """Remove generators defined by a relator, free-reduce, drop duplicates.

    Produces a presentation of an isomorphic group; terminates within
    `budget` elimination/cleanup rounds."""
    gens = list(p.generators)
    relators = [free_reduce(r) for r in p.relators]
    for _ in range(budget):
        # cleanup: drop empty and duplicate relators
        seen = {}
        for r in relators:
            c = _canonical_relator(r)
            if c and c not in seen:
                seen[c] = r
        relators = list(seen.values())

        # find a relator in which some generator occurs exactly once
        target = None
        for ri, rel in enumerate(relators):
            counts: dict[str, int] = {}
            for sym, _e in rel:
                counts[sym] = counts.get(sym, 0) + 1
            for pos, (sym, e) in enumerate(rel):
                if counts[sym] == 1:
                    target = (ri, pos, sym, e)
                    break
            if target:
                break
        if target is None:
            break
        ri, pos, sym, e = target
        rel = relators[ri]
        # rel = u sym^e v  =>  sym^e = u^-1 v^-1  =>  sym = (u^-1 v^-1)^(1/e)
        u, v = rel[:pos], rel[pos + 1:]
        rhs = free_reduce(invert(u) + invert(v))
        if e == -1:
            rhs = invert(rhs)
        relators = [_substitute(r, sym, rhs)
                    for i, r in enumerate(relators) if i != ri]
        gens.remove(sym)
    relators = sorted({_canonical_relator(r) for r in relators if free_reduce(r)})
    return Presentation(tuple(gens), tuple(relators))


# -- Smith normal form over the integers ------------------------------------

def smith_normal_form(matrix: list[list[int]]) -> list[int]:
    """Diagonal of the Smith normal form (d1 | d2 | ..., nonnegative)."""
    a = [row[:] for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    diag = []
    r = c = 0
    while r < rows and c < cols:
        # find a pivot
        pi, pj = None, None
        best = None
        for i in range(r, rows):
            for j in range(c, cols):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < best):
                    best, pi, pj = abs(a[i][j]), i, j
        if pi is None:
            break
        a[r], a[pi] = a[pi], a[r]
        for row in a:
            row[c], row[pj] = row[pj], row[c]
        while True:
            # clear the column
            dirty = False
            for i in range(rows):
                if i != r and a[i][c] != 0:
                    q = a[i][c] // a[r][c]
                    for j in range(cols):
                        a[i][j] -= q * a[r][j]
                    if a[i][c] != 0:
                        a[r], a[i] = a[i], a[r]
                        dirty = True
            for j in range(cols):
                if j != c and a[r][j] != 0:
                    q = a[r][j] // a[r][c]
                    for i in range(rows):
                        a[i][j] -= q * a[i][c]
                    if a[r][j] != 0:
                        for i in range(rows):
                            a[i][c], a[i][j] = a[i][j], a[i][c]
                        dirty = True
            if not dirty:
                break
        diag.append(abs(a[r][c]))
        r += 1
        c += 1
    # enforce the divisibility chain
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            if diag[i] == 0:
                diag[i], diag[j] = diag[j], diag[i]
            if diag[j] % max(diag[i], 1) != 0:
                g = math.gcd(diag[i], diag[j])
                lcm = diag[i] // g * diag[j]
                diag[i], diag[j] = g, lcm
    return diag


@dataclass(frozen=True)
class AbelianInvariants:
    """H_1 data: torsion elementary divisors (each > 1) plus free rank."""

    divisors: tuple[int, ...]
    free_rank: int

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.divisors]
        if self.free_rank:
            parts.append(f"Z^{self.free_rank}" if self.free_rank > 1 else "Z")
        return " + ".join(parts) if parts else "1"


def exponent_matrix(p: Presentation) -> list[list[int]]:
    index = {g: i for i, g in enumerate(p.generators)}
    rows = []
    for rel in p.relators:
        row = [0] * len(p.generators)
        for sym, e in rel:
            row[index[sym]] += e
        rows.append(row)
    return rows


def abelianization(p: Presentation) -> AbelianInvariants:
    """Smith normal form of the relator-exponent matrix."""
    if not p.generators:
        return AbelianInvariants((), 0)
    if not p.relators:
        return AbelianInvariants((), len(p.generators))
    diag = smith_normal_form(exponent_matrix(p))
    nonzero = [d for d in diag if d != 0]
    torsion = tuple(d for d in nonzero if d > 1)
    return AbelianInvariants(torsion, len(p.generators) - len(nonzero))
