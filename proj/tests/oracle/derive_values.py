# Copyright 2026 The ExeDec Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent reference semantics used to derive frozen test expectations.

Re-implements both DSLs directly on Python's `re` module and plain lists,
then writes tests/oracle_cases.inc. Run from the repository root:

    python3 tests/oracle/derive_values.py > tests/oracle_cases.inc
"""

import itertools
import random
import re

# --------------------------------------------------------------------------
# String DSL

CLASSES = {
    "NUMBER": r"[0-9]+",
    "WORD": r"[A-Za-z]+",
    "ALPHANUM": r"[A-Za-z0-9]+",
    "ALL_CAPS": r"[A-Z]+",
    "PROP_CASE": r"[A-Z][a-z]+",
    "LOWER": r"[a-z]+",
    "DIGIT": r"[0-9]",
    "CHAR": r".",
}
DELIMS = "&,.?!@()[]%{}/:;$# \"'"


def spans(r, s):
    pat = CLASSES.get(r, None) or re.escape(r)
    return [(m.start(), m.end()) for m in re.finditer(pat, s, re.DOTALL)]


def pick(ms, i):
    if i > 0 and i <= len(ms):
        return ms[i - 1]
    if i < 0 and -i <= len(ms):
        return ms[len(ms) + i]
    return None


class Err(Exception):
    pass


def substring(e, s):
    op = e[0]
    if op == "SubStr":
        k1, k2 = e[1], e[2]
        n = len(s)
        p1 = k1 if k1 > 0 else n + k1 + 1
        p2 = k2 if k2 > 0 else n + k2 + 1
        if p1 < 1 or p2 > n or p1 > p2:
            raise Err()
        return s[p1 - 1 : p2]
    if op == "GetSpan":
        r1, i1, b1, r2, i2, b2 = e[1:]
        m1, m2 = pick(spans(r1, s), i1), pick(spans(r2, s), i2)
        if m1 is None or m2 is None:
            raise Err()
        a = m1[0] if b1 == "START" else m1[1]
        b = m2[0] if b2 == "START" else m2[1]
        if a >= b:
            raise Err()
        return s[a:b]
    if op == "GetToken":
        m = pick(spans(e[1], s), e[2])
        if m is None:
            raise Err()
        return s[m[0] : m[1]]
    if op in ("GetUpto", "GetFrom"):
        ms = spans(e[1], s)
        if not ms:
            raise Err()
        out = s[: ms[0][1]] if op == "GetUpto" else s[ms[0][1] :]
        if not out:
            raise Err()
        return out
    raise ValueError(op)


def modification(e, s):
    op = e[0]
    if op == "ToCase":
        if e[1] == "ALL_CAPS":
            return s.upper()
        if e[1] == "LOWER":
            return s.lower()
        return re.sub(r"[A-Za-z]+", lambda m: m.group(0)[0].upper() + m.group(0)[1:].lower(), s)
    if op == "Replace":
        return s.replace(e[1], e[2])
    if op == "Trim":
        return s.strip(" ")
    if op == "GetFirst":
        ms, i = spans(e[1], s), e[2]
        if abs(i) > len(ms):
            raise Err()
        chosen = ms[:i] if i > 0 else ms[len(ms) + i :]
        return "".join(s[a:b] for a, b in chosen)
    if op == "GetAll":
        return " ".join(s[a:b] for a, b in spans(e[1], s))
    if op in ("Substitute", "Remove"):
        m = pick(spans(e[1], s), e[2])
        if m is None:
            raise Err()
        mid = e[3] if op == "Substitute" else ""
        return s[: m[0]] + mid + s[m[1] :]
    if op == "SubstituteAll":
        return re.sub(CLASSES.get(e[1], None) or re.escape(e[1]), lambda m: e[2], s, flags=re.DOTALL)
    if op == "RemoveAll":
        return re.sub(CLASSES.get(e[1], None) or re.escape(e[1]), "", s, flags=re.DOTALL)
    raise ValueError(op)


SUBSTRING_OPS = {"SubStr", "GetSpan", "GetToken", "GetUpto", "GetFrom"}


def rf_eval(e, s):
    if e[0] == "Const":
        return e[1]
    if e[0] == "Compose":
        return modification(e[1], rf_eval(e[2], s))
    if e[0] in SUBSTRING_OPS:
        return substring(e, s)
    return modification(e, s)


def lit(c):
    return "'\\" + c + "'" if c in "'\\" else "'" + c + "'"


def rtext(r):
    return r if r in CLASSES else lit(r)


def rf_text(e):
    op = e[0]
    if op == "Const":
        return "Const(%s)" % lit(e[1])
    if op == "Compose":
        return "Compose(%s, %s)" % (rf_text(e[1]), rf_text(e[2]))
    if op == "SubStr":
        return "SubStr(%d, %d)" % (e[1], e[2])
    if op == "GetSpan":
        return "GetSpan(%s, %d, %s, %s, %d, %s)" % (rtext(e[1]), e[2], e[3], rtext(e[4]), e[5], e[6])
    if op in ("GetToken", "GetFirst", "Remove"):
        return "%s(%s, %d)" % (op, rtext(e[1]), e[2])
    if op in ("GetUpto", "GetFrom", "GetAll", "RemoveAll"):
        return "%s(%s)" % (op, rtext(e[1]))
    if op == "ToCase":
        return "ToCase(%s)" % e[1]
    if op == "Replace":
        return "Replace(%s, %s)" % (lit(e[1]), lit(e[2]))
    if op == "Trim":
        return "Trim()"
    if op == "Substitute":
        return "Substitute(%s, %d, %s)" % (rtext(e[1]), e[2], lit(e[3]))
    if op == "SubstituteAll":
        return "SubstituteAll(%s, %s)" % (rtext(e[1]), lit(e[2]))
    raise ValueError(op)


def rand_regex(rng):
    return rng.choice(list(CLASSES) + list(DELIMS))


def rand_index(rng):
    return rng.choice([-3, -2, -1, 1, 2, 3])


def rand_substring(rng):
    op = rng.choice(sorted(SUBSTRING_OPS))
    if op == "SubStr":
        return (op, rng.choice([-12, -5, -2, -1, 1, 2, 4, 9]), rng.choice([-9, -3, -1, 1, 3, 6, 12]))
    if op == "GetSpan":
        return (op, rand_regex(rng), rand_index(rng), rng.choice(["START", "END"]),
                rand_regex(rng), rand_index(rng), rng.choice(["START", "END"]))
    if op == "GetToken":
        return (op, rand_regex(rng), rand_index(rng))
    return (op, rand_regex(rng))


def rand_modification(rng):
    op = rng.choice(["ToCase", "Replace", "Trim", "GetFirst", "GetAll", "Substitute",
                     "SubstituteAll", "Remove", "RemoveAll"])
    if op == "ToCase":
        return (op, rng.choice(["ALL_CAPS", "PROPER", "LOWER"]))
    if op == "Replace":
        return (op, rng.choice(DELIMS), rng.choice(DELIMS))
    if op == "Trim":
        return (op,)
    if op in ("GetFirst", "Remove"):
        return (op, rand_regex(rng), rand_index(rng))
    if op in ("GetAll", "RemoveAll"):
        return (op, rand_regex(rng))
    if op == "Substitute":
        return (op, rand_regex(rng), rand_index(rng), rng.choice("xQ7#!"))
    return (op, rand_regex(rng), rng.choice("xQ7#!"))


def rand_rf(rng):
    u = rng.random()
    if u < 0.4:
        return rand_substring(rng)
    if u < 0.75:
        return rand_modification(rng)
    if u < 0.9:
        inner = rand_substring(rng) if rng.random() < 0.5 else rand_modification(rng)
        return ("Compose", rand_modification(rng), inner)
    return ("Const", rng.choice(DELIMS))


RF_INPUTS = [
    "TURING, Alan",
    "knuth Donald",
    "Hopper Grace",
    "DIJKSTRA... Edsger",
    "ab12cd3",
    "a,b,c",
    "  Mr. Bob O'Neil 42 ",
    "x9Y(77) zz.Qq",
]

# --------------------------------------------------------------------------
# List DSL

BOUND = 256
INT_TO_INT = {
    "(+1)": lambda x: x + 1, "(-1)": lambda x: x - 1, "(*2)": lambda x: x * 2,
    "(/2)": lambda x: x // 2, "(*(-1))": lambda x: -x, "(**2)": lambda x: x * x,
    "(*3)": lambda x: x * 3, "(/3)": lambda x: x // 3, "(*4)": lambda x: x * 4,
    "(/4)": lambda x: x // 4,
}
INT_TO_BOOL = {
    "(>0)": lambda x: x > 0, "(<0)": lambda x: x < 0,
    "(%2==0)": lambda x: x % 2 == 0, "(%2==1)": lambda x: x % 2 == 1,
}
INT_PAIR = {
    "(+)": lambda a, b: a + b, "(-)": lambda a, b: a - b, "(*)": lambda a, b: a * b,
    "(min)": min, "(max)": max,
}
FIRST_ORDER = {  # name -> (operand sorts, function)
    "Head": ("l", lambda xs: xs[0]),
    "Last": ("l", lambda xs: xs[-1]),
    "Take": ("nl", lambda n, xs: xs[: max(0, n)]),
    "Drop": ("nl", lambda n, xs: xs[max(0, n) :]),
    "Access": ("nl", lambda n, xs: xs[n] if 0 <= n < len(xs) else None),
    "Minimum": ("l", lambda xs: min(xs)),
    "Maximum": ("l", lambda xs: max(xs)),
    "Reverse": ("l", lambda xs: xs[::-1]),
    "Sort": ("l", sorted),
    "Sum": ("l", sum),
}


def scanl1(f, xs):
    out = []
    for x in xs:
        out.append(x if not out else f(out[-1], x))
    return out


def dc_apply(op, lam, args):
    """Returns the value or None for an execution error."""
    try:
        if op in FIRST_ORDER:
            v = FIRST_ORDER[op][1](*args)
        elif op == "Map":
            v = [INT_TO_INT[lam](x) for x in args[0]]
        elif op == "Filter":
            v = [x for x in args[0] if INT_TO_BOOL[lam](x)]
        elif op == "Count":
            v = sum(1 for x in args[0] if INT_TO_BOOL[lam](x))
        elif op == "ZipWith":
            v = [INT_PAIR[lam](a, b) for a, b in zip(args[0], args[1])]
        else:
            v = scanl1(INT_PAIR[lam], args[0])
    except (IndexError, ValueError):
        return None
    if v is None:
        return None
    vals = v if isinstance(v, list) else [v]
    if any(abs(x) > BOUND for x in vals):
        return None
    return v


def statements(sorts):
    """Every (op, lambda, operand positions) applicable to variables of `sorts`."""
    ints = [j for j, s in enumerate(sorts) if s == "n"]
    lists = [j for j, s in enumerate(sorts) if s == "l"]
    out = []
    for op, (shape, _) in FIRST_ORDER.items():
        pools = [ints if c == "n" else lists for c in shape]
        for combo in itertools.product(*pools):
            out.append((op, None, combo))
    for l in lists:
        out += [("Map", lam, (l,)) for lam in INT_TO_INT]
        out += [("Filter", lam, (l,)) for lam in INT_TO_BOOL]
        out += [("Count", lam, (l,)) for lam in INT_TO_BOOL]
        out += [("Scanl1", lam, (l,)) for lam in INT_PAIR]
    for a in lists:
        for b in lists:
            out += [("ZipWith", lam, (a, b)) for lam in INT_PAIR]
    return out


def sort_of(v):
    return "l" if isinstance(v, list) else "n"


def min_length(examples, target, max_len):
    """Shortest statement sequence whose last value equals `target` on every example."""
    start = [[list(ex)] for ex in examples]

    def search(states, depth):
        sorts = [sort_of(v) for v in states[0]]
        for op, lam, args in statements(sorts):
            vals = []
            for st in states:
                v = dc_apply(op, lam, [st[a] for a in args])
                if v is None:
                    break
                vals.append(v)
            else:
                if depth == 1:
                    if vals == target:
                        return True
                    continue
                # A value repeated on every example adds nothing.
                if any(all(st[j] == vals[i] for i, st in enumerate(states)) for j in range(len(states[0]))):
                    continue
                if search([st + [vals[i]] for i, st in enumerate(states)], depth - 1):
                    return True
        return False

    for length in range(1, max_len + 1):
        if search(start, length):
            return length
    return 0


def fmt_value(v):
    return "[" + ", ".join(str(x) for x in v) + "]" if isinstance(v, list) else str(v)


def cpp_str(s):
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def main():
    rng = random.Random(20261018)
    with open(__file__) as src:
        for line in src:
            if not line.startswith("#"):
                break
            print("//" + line[1:], end="")
    print()
    print("// Generated by tests/oracle/derive_values.py. Do not edit.")
    print("// clang-format off")
    print("// {expression, input, expected output or nullptr for an execution error}")
    print("inline const OracleRfCase kOracleRfCases[] = {")
    seen = 0
    while seen < 160:
        e = rand_rf(rng)
        s = rng.choice(RF_INPUTS)
        try:
            out = cpp_str(rf_eval(e, s))
        except Err:
            out = "nullptr"
        print("    {%s, %s, %s}," % (cpp_str(rf_text(e)), cpp_str(s), out))
        seen += 1
    print("};")
    print()

    print("// {statement right-hand side, operand values, expected value or nullptr}")
    print("inline const OracleDcCase kOracleDcCases[] = {")
    lists = [[5, 3, -4], [], [7], [-50, 50, 13, -1, 0], [2, 2, -3, 9], [-7, 0, 11], [200, 100]]
    ints = [0, 2, -1, 4, 5]
    count = 0
    while count < 200:
        ops = list(FIRST_ORDER) + ["Map", "Filter", "Count", "ZipWith", "Scanl1"]
        op = rng.choice(ops)
        if op in FIRST_ORDER:
            shape, lam = FIRST_ORDER[op][0], None
        else:
            shape = "ll" if op == "ZipWith" else "l"
            lam = rng.choice(list({"Map": INT_TO_INT, "Filter": INT_TO_BOOL, "Count": INT_TO_BOOL}.get(op, INT_PAIR)))
        args = [rng.choice(ints) if c == "n" else rng.choice(lists) for c in shape]
        names = " ".join("x%d" % j for j in range(len(args)))
        rhs = op + (" " + lam if lam else "") + " " + names
        v = dc_apply(op, lam, args)
        vals = ", ".join(cpp_str(fmt_value(a)) for a in args)
        print("    {%s, {%s}, %s}," % (cpp_str(rhs), vals, cpp_str(fmt_value(v)) if v is not None else "nullptr"))
        count += 1
    print("};")
    print()

    print("// {example inputs (one list each), target outputs, shortest length}")
    print("inline const OracleMinCase kOracleMinCases[] = {")
    cases = [
        ([[5, 3, -4]], [[9, 16, 25]]),
        ([[1, 2, 3]], [[1, 2, 3]]),
    ]
    example_sets = [
        [[5, 3, -4], [-2], [3, 7, 1, 4]],
        [[1, 2, 3, 4], [-5, 5], [0, 9, -9]],
        [[10, -3, 4], [6], [2, 8, -1, -1]],
    ]
    while len(cases) < 24:
        exs = rng.choice(example_sets)
        states = [[list(x)] for x in exs]
        length = rng.choice([1, 2, 2, 3, 3])
        ok = True
        for _ in range(length):
            sorts = [sort_of(v) for v in states[0]]
            op, lam, args = rng.choice(statements(sorts))
            vals = [dc_apply(op, lam, [st[a] for a in args]) for st in states]
            if any(v is None for v in vals):
                ok = False
                break
            for st, v in zip(states, vals):
                st.append(v)
        if not ok:
            continue
        target = [st[-1] for st in states]
        if all(isinstance(t, list) and len(t) <= 5 for t in target) or all(not isinstance(t, list) for t in target):
            cases.append(([list(x) for x in exs], target))
    for exs, target in cases:
        n = min_length(exs, target, 3)
        print("    {{%s}, {%s}, %d}," % (", ".join(cpp_str(fmt_value(x)) for x in exs),
                                       ", ".join(cpp_str(fmt_value(t)) for t in target), n))
    print("};")
    print("// clang-format on")


if __name__ == "__main__":
    main()
