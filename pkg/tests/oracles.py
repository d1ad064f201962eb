"""Independent brute-force oracles shared by the tests.

Nothing here imports the search code it checks; the definitions are
transcribed directly from the combinatorial objects.
"""

from __future__ import annotations

from itertools import combinations, product


def is_moon_cell_set(cells: set[tuple[int, int]]) -> bool:
    """Connected, row- and column-convex, and any two columns comparable."""
    if not cells:
        return False
    start = next(iter(cells))
    seen, stack = {start}, [start]
    while stack:
        r, c = stack.pop()
        for nb in ((r + 1, c), (r - 1, c), (r, c + 1), (r, c - 1)):
            if nb in cells and nb not in seen:
                seen.add(nb)
                stack.append(nb)
    if seen != cells:
        return False
    rows: dict[int, list[int]] = {}
    cols: dict[int, list[int]] = {}
    for r, c in cells:
        rows.setdefault(r, []).append(c)
        cols.setdefault(c, []).append(r)
    for group in (rows, cols):
        for vals in group.values():
            if max(vals) - min(vals) + 1 != len(vals):
                return False
    colsets = [set(v) for v in cols.values()]
    return all(a <= b or b <= a for a, b in combinations(colsets, 2))


def moon_shapes_brute(max_rows: int, max_cols: int) -> set[frozenset]:
    box = [(r, c) for r in range(1, max_rows + 1) for c in range(1, max_cols + 1)]
    out = set()
    for bits in product((0, 1), repeat=len(box)):
        cells = {cell for cell, b in zip(box, bits) if b}
        if not cells or min(r for r, _ in cells) != 1 or min(c for _, c in cells) != 1:
            continue
        if is_moon_cell_set(cells):
            out.add(frozenset(cells))
    return out


def _is_chain(cells, shape_cells) -> bool:
    cells = sorted(cells, key=lambda x: x[1])
    for (r1, c1), (r2, c2) in zip(cells, cells[1:]):
        if not (c2 > c1 and r2 < r1):
            return False
    (rb, cl), (rt, cr) = cells[0], cells[-1]
    return all((r, c) in shape_cells for r in range(rt, rb + 1) for c in range(cl, cr + 1))


def longest_chain_brute(ones, shape_cells) -> int:
    ones = list(ones)
    best = 0
    for size in range(1, len(ones) + 1):
        if any(_is_chain(sub, shape_cells) for sub in combinations(ones, size)):
            best = size
        else:
            break
    return best


def maximal_fillings_brute(shape_cells, k: int) -> set[frozenset]:
    """All sets of 1-cells with longest chain <= k that cannot take another 1."""
    cells = sorted(shape_cells)
    memo: dict[frozenset, int] = {}

    def longest(ones: frozenset) -> int:
        if ones not in memo:
            memo[ones] = longest_chain_brute(ones, shape_cells)
        return memo[ones]

    out = set()
    for bits in product((0, 1), repeat=len(cells)):
        ones = frozenset(c for c, b in zip(cells, bits) if b)
        if longest(ones) > k:
            continue
        if all(longest(ones | {z}) > k for z in cells if z not in ones):
            out.add(ones)
    return out


def chutable_brute(crosses: set, n: int, inverse: bool = False) -> set[tuple[int, int, int, int]]:
    """Rectangles ``(top, bottom, left, right)`` of height and width at least 2 where
    every cell is a cross except three elbow corners; the fourth corner
    (north-east for chutes, south-west for inverse chutes) is a cross."""
    out = set()
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            for c in range(1, n + 1):
                for d in range(c + 1, n + 1):
                    corners = {(a, c), (a, d), (b, c), (b, d)}
                    moving = (b, c) if inverse else (a, d)
                    ok = True
                    for r in range(a, b + 1):
                        for col in range(c, d + 1):
                            want = (r, col) == moving or (r, col) not in corners
                            if ((r, col) in crosses) != want:
                                ok = False
                                break
                        if not ok:
                            break
                    if ok:
                        out.add((a, b, c, d))
    return out


def determinant_expansion(matrix) -> int:
    """Leibniz expansion; exponential but independent of elimination."""
    from itertools import permutations

    n = len(matrix)
    total = 0
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = sign
        for i in range(n):
            term *= matrix[i][perm[i]]
        total += term
    return total
