#!/usr/bin/env python3
"""Brute-force expected kill matrices under the default exhaustive domains.

Independent of the Rust implementation: every function and property is
re-stated here with explicit 32-bit wrapping, and each cell is decided by
plain enumeration of the full cross product.

Usage: python3 scripts/expected_matrix.py crates/core/fixtures/expected
"""

import itertools
import json
import os
import sys

INTS = list(range(-60, 61))
LIST_VALUES = [0, 7, 42]
MAX_LIST_LEN = 3
BIGINTS = list(range(0, 65))
MAX_BITS_LEN = 6

DOMAIN = {
    "ints": {"range": [-60, 60]},
    "list_values": LIST_VALUES,
    "max_list_len": MAX_LIST_LEN,
    "bigint_lo": 0,
    "bigint_hi": 64,
    "max_bits_len": MAX_BITS_LEN,
}


def wrap(x):
    x &= 0xFFFFFFFF
    return x - (1 << 32) if x >= (1 << 31) else x


def all_lists(alphabet, max_len):
    out = []
    for n in range(max_len + 1):
        out.extend(list(t) for t in itertools.product(alphabet, repeat=n))
    return out


INT_LISTS = all_lists(LIST_VALUES, MAX_LIST_LEN)
BIT_LISTS = all_lists([False, True], MAX_BITS_LEN)

# --- functions -------------------------------------------------------------


def max_ref(x, y):
    return x if x > y else y


def mad_max(x, y):
    return 43 if (x == 42 and y == 42) else max_ref(x, y)


def sum_true(n):
    # True arithmetic sum of 1..n, reduced to 32 bits.
    return 0 if n < 1 else wrap(n * (n + 1) // 2)


def sum_closed(n):
    if n < 1:
        return 0
    p = wrap(wrap(n + 1) * n)
    # 32-bit signed division truncates toward zero.
    return int(p / 2) if p >= 0 else -((-p) // 2)


def count_ref(x, l):
    return sum(1 for e in l if e == x)


def mad_count(x, l):
    return len(l)


def dracula(x, l):
    return 1 + count_ref(x, l)


def enc(n):
    bits = []
    while n > 0:
        bits.append(n % 2 == 1)
        n //= 2
    return bits


def dec(l):
    return sum(1 << i for i, b in enumerate(l) if b)


def enc_bij(n):
    if n < 0:
        return []
    return enc(n + 1)[:-1]


def dec_bij(l):
    return dec(list(l) + [True]) - 1


def add_bits(a, b):
    return enc(dec(a) + dec(b))


# --- properties --------------------------------------------------------------
# Each property: (name, [domains], predicate). Predicates return True, False,
# or None (discard). Arity-0 properties have an empty domain list.


def implies(p, q):
    return q() if p else None


def max_props(m):
    return [
        ("Use cases for max", [], lambda: m(1, 5) == 5 and m(1, 1) == 1 and m(3, 2) == 3
         and m(3, -1) == 3 and m(1, -3) == 1),
        ("Symmetry", [INTS, INTS], lambda x, y: m(x, y) == m(y, x)),
        ("max(x,x)=x", [INTS], lambda x: m(x, x) == x),
        ("Upper bound (2)", [INTS, INTS], lambda x, y: x <= m(x, y) and y <= m(x, y)),
        ("Upper bound (1)", [INTS, INTS], lambda x, y: x <= m(x, y)),
        ("Least upper bound", [INTS, INTS, INTS],
         lambda x, y, u: implies(x <= u and y <= u, lambda: m(x, y) <= u)),
        ("Our implementation (A)", [INTS, INTS],
         lambda x, y: m(x, y) == x if x > y else m(x, y) == y),
        ("Our implementation (B)", [INTS, INTS], lambda x, y: m(x, y) == (x if x > y else y)),
    ]


def sum_props(s):
    step = lambda n: wrap(n + s(n - 1))
    return [
        ("Use cases for sum", [], lambda: [s(k) for k in (-1, 0, 1, 2, 3, 4)] == [0, 0, 1, 3, 6, 10]),
        ("Non-positive (A)", [INTS], lambda n: implies(n < 1, lambda: s(n) == 0)),
        ("Positive (A)", [INTS], lambda n: implies(n >= 1, lambda: s(n) == step(n))),
        ("Non-positive (B)", [INTS], lambda n: s(n) == 0 if n < 1 else True),
        ("Positive (B)", [INTS], lambda n: s(n) == step(n) if n >= 1 else True),
        ("Non-positive (C)", [INTS], lambda n: s(n) == 0 if n < 1 else True),
        ("Positive (C)", [INTS], lambda n: True if n < 1 else s(n) == step(n)),
        ("Sum (A)", [INTS], lambda n: s(n) == 0 if n < 1 else s(n) == step(n)),
        ("Sum (B)", [INTS], lambda n: s(n) == (0 if n < 1 else step(n))),
        ("Monotonicity", [INTS, INTS], lambda x, y: implies(x <= y, lambda: s(x) <= s(y))),
    ]


def count_props(c):
    def something(n1, n2, l):
        ext = c(n1, [n2] + l)
        return c(n1, l) == ext if n1 != n2 else wrap(c(n1, l) + 1) == ext

    def spec_b(n1, l):
        if not l:
            return c(n1, l) == 0
        n2, rest = l[0], l[1:]
        if n1 != n2:
            return c(n1, rest) == c(n1, l)
        return wrap(c(n1, rest) + 1) == c(n1, l)

    def spec_d(n1, l):
        if not l:
            rhs = 0
        elif n1 == l[0]:
            rhs = wrap(c(n1, l[1:]) + 1)
        else:
            rhs = c(n1, l[1:])
        return c(n1, l) == rhs

    return [
        ("Use cases for count", [], lambda: c(7, []) == 0 and c(7, [7]) == 1
         and c(7, [1, 7]) == 1 and c(7, [7, 1, 7]) == 2),
        ("Count/append", [INTS, INT_LISTS, INT_LISTS],
         lambda n, a, b: wrap(c(n, a) + c(n, b)) == c(n, a + b)),
        ("Instance at start", [INTS, INT_LISTS], lambda n, l: wrap(c(n, l) + 1) == c(n, [n] + l)),
        ("Non-instance at start (A)", [INTS, INTS, INT_LISTS],
         lambda n1, n2, l: implies(n1 != n2, lambda: c(n1, l) == c(n1, [n2] + l))),
        ("Non-instance at start (B)", [INTS, INTS, INT_LISTS],
         lambda n1, n2, l: c(n1, l) == c(n1, [n2] + l) if n1 != n2 else True),
        ("Something at start (A)", [INTS, INTS, INT_LISTS], something),
        ("Count specification (A)", [INTS, INTS, INT_LISTS],
         lambda n1, n2, l: (c(n1, l) == 0 if not l else True) and something(n1, n2, l)),
        ("Count specification (B)", [INTS, INT_LISTS], spec_b),
        ("Count specification (C)", [INTS, INT_LISTS], spec_b),
        ("Count specification (D)", [INTS, INT_LISTS], spec_d),
    ]


def codec_props(e, d):
    return [
        ("Use cases for encode", [], lambda: e(0) == [] and e(1) == [True] and e(2) == [False, True]
         and e(3) == [True, True] and e(8) == [False, False, False, True]),
        ("Use cases for decode", [], lambda: d([]) == 0 and d([True]) == 1 and d([False, True]) == 2
         and d([True, True]) == 3 and d([False, False, False, True]) == 8),
        ("n>=0 ==> d(e(n)) == n", [BIGINTS], lambda n: implies(n >= 0, lambda: d(e(n)) == n)),
        ("e(d(l)) == l (false!)", [BIT_LISTS], lambda l: e(d(l)) == l),
        ("n>=0 ==> e(d(e(n))) == e(n)", [BIGINTS],
         lambda n: implies(n >= 0, lambda: e(d(e(n))) == e(n))),
    ]


def bits(s):
    return [ch == "1" for ch in s]


def codec_bij_props(e, d):
    return [
        ("Use cases for bijective codec", [], lambda: e(0) == [] and e(1) == bits("0")
         and e(2) == bits("1") and e(3) == bits("00") and e(6) == bits("11") and d([]) == 0
         and d(bits("0")) == 1 and d(bits("10")) == 4 and d(bits("000")) == 7),
        ("n>=0 ==> d(e(n)) == n", [BIGINTS], lambda n: implies(n >= 0, lambda: d(e(n)) == n)),
        ("e(d(l)) == l", [BIT_LISTS], lambda l: e(d(l)) == l),
        ("n>=0 ==> e(d(e(n))) == e(n)", [BIGINTS],
         lambda n: implies(n >= 0, lambda: e(d(e(n))) == e(n))),
        ("d(add(a,b)) == d(a) + d(b)", [BIT_LISTS, BIT_LISTS],
         lambda a, b: dec(add_bits(a, b)) == dec(a) + dec(b)),
        ("a,b>=0 ==> add(e(a),e(b)) == e(a+b)", [BIGINTS, BIGINTS],
         lambda a, b: implies(a >= 0 and b >= 0, lambda: add_bits(enc(a), enc(b)) == enc(a + b))),
    ]


def verdict(domains, pred):
    for args in itertools.product(*domains):
        if pred(*[list(a) if isinstance(a, list) else a for a in args]) is False:
            return "Fail"
    return "Pass"


FAMILIES = {
    "max": [("max", max_props(max_ref)), ("mad_max", max_props(mad_max))],
    "sum": [("sum_iter", sum_props(sum_true)), ("sum_closed", sum_props(sum_closed)),
            ("sum_rec", sum_props(sum_true))],
    "count": [("count", count_props(count_ref)), ("mad_count", count_props(mad_count)),
              ("dracula", count_props(dracula))],
    "codec": [("binary", codec_props(enc, dec)), ("bijective", codec_props(enc_bij, dec_bij))],
    "codec_bij": [("bijective", codec_bij_props(enc_bij, dec_bij))],
}


def main():
    out_dir = sys.argv[1] if len(sys.argv) > 1 else "."
    os.makedirs(out_dir, exist_ok=True)
    for family, variants in FAMILIES.items():
        properties = [name for name, _, _ in variants[0][1]]
        cells = [[verdict(doms, pred) for _, doms, pred in props] for _, props in variants]
        doc = {
            "family": family,
            "mode": "exhaustive",
            "domain": DOMAIN,
            "variants": [v for v, _ in variants],
            "properties": properties,
            "cells": cells,
        }
        path = os.path.join(out_dir, f"{family}.json")
        with open(path, "w") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
