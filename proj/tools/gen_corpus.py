#!/usr/bin/env python3
"""Writes the transfer and survey corpora under corpus/ (deterministic)."""
import argparse
import json
import random
from pathlib import Path


def poly(terms):
    """terms: list of (coeff, monomial string); monomial "" is the constant."""
    out = ""
    for c, m in terms:
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        body = m if abs(c) == 1 and m else (f"{abs(c)}*{m}" if m else str(abs(c)))
        out += (f" {sign} " if out else ("-" if c < 0 else "")) + body
    return out or "0"


def nz(rng, lo=-5, hi=5):
    while True:
        c = rng.randint(lo, hi)
        if c:
            return c


def base(kind, name, vars_, ideals, projective=False, **extra):
    d = {"kind": kind, "name": name, "field": "Q", "vars": vars_, "projective": projective, "ideals": ideals}
    d.update(extra)
    d["sample"] = {"above": 3, "count": 50}
    return d


def associated_cycle(rng, k):
    shape = k % 4
    if shape == 0:
        f = poly([(1, "x^2"), (nz(rng), "y"), (rng.randint(-4, 4), "")])
        return base("AssociatedCycle", f"power of a parabola {k}", ["x", "y"], [[f"({f})^{rng.randint(2, 3)}"]])
    if shape == 1:
        a, b = rng.randint(2, 9), nz(rng)
        return base("AssociatedCycle", f"fat conjugate points {k}", ["x", "y"], [[poly([(1, "x^2"), (-a, "")]), f"({poly([(1, 'y'), (-b, 'x')])})^2"]])
    if shape == 2:
        f = poly([(1, "x"), (nz(rng), "y")])
        g = poly([(1, "y^2"), (nz(rng), "x"), (rng.randint(-4, 4), "")])
        return base("AssociatedCycle", f"line and parabola {k}", ["x", "y"], [[f"({f})^2*({g})"]])
    q = poly([(1, "x^2"), (nz(rng), "y^2"), (nz(rng), "z^2")])
    l = poly([(1, "x"), (nz(rng), "z")])
    return base("AssociatedCycle", f"projective conic and double line {k}", ["x", "y", "z"], [[f"({q})*({l})^2"]], projective=True)


def local_length(rng, k):
    a, c = rng.randint(2, 11), nz(rng)
    g = poly([(1, "x^2"), (-a, "")]) if k % 2 else poly([(1, "x"), (nz(rng), "")])
    h = poly([(1, "y"), (-c, "x")])
    p = [g, h]
    shape = k % 3
    if shape == 0:
        i = [g, f"({h})^{rng.randint(2, 4)}"]
    elif shape == 1:
        i = [f"({g})^2", f"({g})*({h})", f"({h})^2"]
    else:
        i = [g, f"({h})^2*({poly([(1, 'y'), (-(c + 20), '')])})"]
    return base("LocalLength", f"local length {k}", ["x", "y"], [i, p])


def koszul(rng, k):
    shape = k % 3
    if shape == 0:
        seq = [poly([(1, "x^2"), (nz(rng), "y"), (rng.randint(-4, 4), "")]), poly([(1, "y^2"), (nz(rng), "x"), (rng.randint(-4, 4), "")])]
        return base("KoszulData", f"two conics {k}", ["x", "y"], [[]], sequence=seq)
    if shape == 1:
        seq = [poly([(1, "x*y"), (nz(rng), "")]), poly([(1, "x^2"), (1, "y^2"), (-rng.randint(1, 9), "")])]
        return base("KoszulData", f"hyperbola and circle {k}", ["x", "y"], [[]], sequence=seq)
    j = poly([(1, "y^2"), (-1, "x^3"), (nz(rng), "x")])
    seq = [poly([(1, "x"), (nz(rng), "y"), (rng.randint(-3, 3), "")])]
    return base("KoszulData", f"line on a cubic {k}", ["x", "y"], [[j]], sequence=seq)


def random_form(rng, degree, vars_):
    terms = []
    for i in range(degree + 1):
        for j in range(degree + 1 - i):
            e = (i, j, degree - i - j)
            m = "*".join(f"{v}^{p}" if p > 1 else v for v, p in zip(vars_, e) if p)
            terms.append((rng.randint(-3, 3), m))
    terms[0] = (nz(rng), terms[0][1])
    return poly(terms)


def intersection_product(rng, k):
    d1, d2 = [(1, 2), (2, 2), (1, 3), (2, 3)][k % 4]
    v = ["x", "y", "z"]
    return base("IntersectionProduct", f"plane curves of degrees {d1} and {d2} ({k})", v,
                [[random_form(rng, d1, v)], [random_form(rng, d2, v)]], projective=True)


def pushforward(rng, k):
    if k % 2:
        f = poly([(1, f"y^{rng.randint(2, 3)}"), (nz(rng), "x*y"), (nz(rng), "x"), (rng.randint(-3, 3), "")])
        return base("Pushforward", f"plane curve over a line {k}", ["x", "y"], [[f]], target_vars=["x"], keep=[0])
    f = poly([(1, "y^2"), (nz(rng), "x"), (rng.randint(-3, 3), "")])
    g = poly([(1, "z^2"), (nz(rng), "y"), (rng.randint(-3, 3), "")])
    return base("Pushforward", f"space curve over a line {k}", ["x", "y", "z"], [[f, g]], target_vars=["x"], keep=[0])


def power(v, e):
    return f"{v}^{e}" if e > 1 else v


def compose(rng, k):
    a = poly([(1, power("y", rng.randint(1, 2))), (nz(rng), "x"), (rng.randint(-3, 3), "")])
    b = poly([(1, power("z", rng.randint(1, 2))), (nz(rng), "y^2" if k % 2 else "y"), (rng.randint(-3, 3), "")])
    return base("Compose", f"compose {k}", ["x"], [[a], [b]], factors=[["x"], ["y"], ["z"]])


def hilbert_degree(rng, k):
    n = 2 + k % 2
    v = ["x", "y", "z", "w"][: n + 1]
    d = 1 + k % 6
    gens = [random_form_n(rng, d, v)]
    if k % 5 == 4 and n == 3:
        gens.append(random_form_n(rng, 2, v))
    return base("HilbertDegree", f"degree {d} in P^{n} ({k})", v, [gens], projective=True)


def random_form_n(rng, degree, vars_):
    # lead with a pure power so the form is nonzero and of full degree
    lead = f"{vars_[0]}^{degree}" if degree > 1 else vars_[0]
    terms = [(nz(rng), lead)]
    seen = {lead}
    for _ in range(4):
        e = [0] * len(vars_)
        for _ in range(degree):
            e[rng.randrange(len(vars_))] += 1
        m = "*".join(f"{x}^{p}" if p > 1 else x for x, p in zip(vars_, e) if p)
        if m not in seen:
            seen.add(m)
            terms.append((rng.randint(-4, 4), m))
    return poly(terms)


def survey():
    v = ["x", "y", "z"]
    pairs = [
        ("lines", ["x - z"], ["y + 2*z"]),
        ("line and conic", ["x - 3*z"], ["x^2 + y^2 - 25*z^2"]),
        ("four rational points", ["x^2 - z^2"], ["y^2 - z^2"]),
        ("circle and hyperbola", ["x^2 + y^2 - 5*z^2"], ["x*y - 2*z^2"]),
        ("tangent line", ["y*z - x^2"], ["y"]),
        ("double line and conic", ["y^2"], ["x^2 + y^2 - 4*z^2"]),
        ("two conics", ["x^2 - y*z"], ["y^2 - x*z"]),
    ]
    return {"ds": [2, 3, 4], "ns": [2, 3], "primes": [5, 7, 11, 13, 17],
            "pairs": [{"name": n, "vars": v, "a": a, "b": b} for n, a, b in pairs]}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "corpus"))
    ap.add_argument("--per-kind", type=int, default=20)
    ap.add_argument("--seed", type=int, default=2024)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    makers = [associated_cycle, local_length, koszul, intersection_product, pushforward, compose, hilbert_degree]
    everything = []
    for make in makers:
        rng = random.Random(f"{args.seed}-{make.__name__}")
        items = [make(rng, k) for k in range(args.per_kind)]
        kind = items[0]["kind"]
        (out / f"transfer_{kind}.json").write_text(json.dumps(items, indent=1) + "\n")
        everything += items
    (out / "transfer.json").write_text(json.dumps(everything, indent=1) + "\n")
    (out / "survey.json").write_text(json.dumps(survey(), indent=1) + "\n")


if __name__ == "__main__":
    main()
