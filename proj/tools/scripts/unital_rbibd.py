#!/usr/bin/env python3
"""Writes rbibd_28.gdd and rgdd_4x7.gdd.

The 28 points of the Hermitian unital x^4 + y^4 + z^4 = 0 in PG(2,9) with its
63 secant lines form a 2-(28,4,1) design. An exact cover of the lines by
parallel classes gives a resolution with 9 classes; dropping the first class
and keeping its blocks as groups gives a resolvable 4-GDD of type 4^7.
"""
import argparse
import itertools
import pathlib


def mul(x, y):
    # GF(9) = GF(3)[i], i^2 = -1, element a + 3b <-> a + b*i
    a, b, c, d = x % 3, x // 3, y % 3, y // 3
    return (a * c - b * d) % 3 + 3 * ((a * d + b * c) % 3)


def add(x, y):
    return (x % 3 + y % 3) % 3 + 3 * ((x // 3 + y // 3) % 3)


def power(x, k):
    r = 1
    for _ in range(k):
        r = mul(r, x)
    return r


def normalized_vectors():
    for v in itertools.product(range(9), repeat=3):
        if v != (0, 0, 0) and next(c for c in v if c) == 1:
            yield v


def unital():
    pts = [v for v in normalized_vectors() if add(add(power(v[0], 4), power(v[1], 4)), power(v[2], 4)) == 0]
    assert len(pts) == 28
    lines = []
    for l in normalized_vectors():
        on = [k for k, p in enumerate(pts) if add(add(mul(l[0], p[0]), mul(l[1], p[1])), mul(l[2], p[2])) == 0]
        if len(on) == 4:
            lines.append(tuple(on))
    assert len(lines) == 63
    return lines


def parallel_classes(lines):
    found = set()

    def dfs(covered, chosen):
        if len(chosen) == 7:
            found.add(tuple(sorted(chosen)))
            return
        p = min(set(range(28)) - covered)
        for bi, b in enumerate(lines):
            if p in b and not set(b) & covered:
                dfs(covered | set(b), chosen + [bi])

    dfs(set(), [])
    return sorted(found)


def resolution(classes):
    by_line = {}
    for i, c in enumerate(classes):
        for b in c:
            by_line.setdefault(b, []).append(i)

    def cover(used, chosen):
        if len(used) == 63:
            return chosen
        free = [x for x in range(63) if x not in used]
        line = min(free, key=lambda x: sum(1 for c in by_line[x] if not used & set(classes[c])))
        for c in by_line[line]:
            s = set(classes[c])
            if not used & s:
                got = cover(used | s, chosen + [c])
                if got:
                    return got
        return None

    sol = cover(set(), [])
    assert sol
    return sol


def emit(path, name, groups, class_list):
    blocks = [b for cls in class_list for b in cls]
    with open(path, "w") as f:
        f.write("# Hermitian unital in PG(2,9); resolution found by exact cover over its parallel classes\n")
        f.write("# generated by tools/scripts/unital_rbibd.py\n")
        f.write(f"gdd {name}\npoints 28\n")
        for g in groups:
            f.write("group " + " ".join(map(str, g)) + "\n")
        for b in blocks:
            f.write("block " + " ".join(map(str, b)) + "\n")
        i = 0
        for cls in class_list:
            f.write("class " + " ".join(str(i + k) for k in range(len(cls))) + "\n")
            i += len(cls)
        f.write("end\n")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("out", nargs="?", default="data/gdd", type=pathlib.Path)
    args = ap.parse_args()

    lines = unital()
    classes = parallel_classes(lines)
    chosen = [[lines[b] for b in classes[c]] for c in resolution(classes)]
    # the first class becomes {0..3}, {4..7}, ...
    relabel = {}
    for g, blk in enumerate(chosen[0]):
        for k, x in enumerate(sorted(blk)):
            relabel[x] = 4 * g + k
    chosen = [sorted(tuple(sorted(relabel[x] for x in blk)) for blk in cls) for cls in chosen]

    args.out.mkdir(parents=True, exist_ok=True)
    emit(args.out / "rbibd_28.gdd", "rbibd_28", [[x] for x in range(28)], chosen)
    emit(args.out / "rgdd_4x7.gdd", "rgdd_4x7", [list(range(4 * g, 4 * g + 4)) for g in range(7)], chosen[1:])


if __name__ == "__main__":
    main()
