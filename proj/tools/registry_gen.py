#!/usr/bin/env python3
"""Writes the Wedderburn registry (registry/*.json).

Each group is given by generator images in every simple component
M_n(D) of Q[G]; the group itself is recovered as the closure of these
images in the direct sum, which fixes the element order (identity first,
then breadth-first in the generators).
"""

import argparse
import json
import math
import os
from fractions import Fraction

import sympy

REGISTRY_VERSION = "1"


# ---------------------------------------------------------------- fields

def cyclotomic_poly(m):
    x = sympy.symbols("x")
    p = sympy.Poly(sympy.cyclotomic_poly(m, x), x)
    return [int(c) for c in reversed(p.all_coeffs())]


class Field:
    def __init__(self, poly, units=None, units_complete=True, integral_basis=None):
        self.poly = poly  # monic, low degree first
        self.deg = len(poly) - 1
        self.units = units or []
        self.units_complete = units_complete
        self.integral_basis = integral_basis

    def zero(self):
        return (Fraction(0),) * self.deg

    def one(self):
        return (Fraction(1),) + (Fraction(0),) * (self.deg - 1)

    def const(self, q):
        return (Fraction(q),) + (Fraction(0),) * (self.deg - 1)

    def theta_pow(self, k):
        v = [Fraction(0)] * (k + 1)
        v[k] = Fraction(1)
        return self.reduce(v)

    def reduce(self, v):
        v = list(v)
        while len(v) > self.deg:
            c = v.pop()
            s = len(v) - self.deg
            for i in range(self.deg):
                v[s + i] -= c * self.poly[i]
        v += [Fraction(0)] * (self.deg - len(v))
        return tuple(v)

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        if self.deg == 1:
            return (a[0] * b[0],)
        c = [Fraction(0)] * (2 * self.deg - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        c[i + j] += x * y
        return self.reduce(c)

    def trace(self, a):
        # trace of multiplication by a on the power basis
        t = Fraction(0)
        for j in range(self.deg):
            e = [Fraction(0)] * self.deg
            e[j] = Fraction(1)
            t += self.mul(a, tuple(e))[j]
        return t


class FieldAlg:
    """D = F."""
    schur = 1

    def __init__(self, f):
        self.f = f
        self.t = f.deg

    def one(self):
        return self.f.one()

    def zero(self):
        return self.f.zero()

    def add(self, a, b):
        return self.f.add(a, b)

    def mul(self, a, b):
        return self.f.mul(a, b)

    def reg_trace(self, a):
        return self.f.trace(a)


class QuatAlg:
    """D = (a, b | F); elements are 4 F-coefficients of 1, i, j, ij."""
    schur = 2

    def __init__(self, f, a, b):
        self.f, self.a, self.b = f, a, b
        self.t = 4 * f.deg

    def split(self, x):
        d = self.f.deg
        return [tuple(x[k * d:(k + 1) * d]) for k in range(4)]

    def join(self, c):
        return tuple(v for part in c for v in part)

    def one(self):
        z = self.f.zero()
        return self.join([self.f.one(), z, z, z])

    def zero(self):
        return (Fraction(0),) * self.t

    def add(self, x, y):
        return tuple(u + v for u, v in zip(x, y))

    def mul(self, x, y):
        F = self.f
        a, b = self.a, self.b
        ab = F.mul(a, b)
        one = F.one()
        table = {
            (0, 0): (one, 0), (0, 1): (one, 1), (0, 2): (one, 2), (0, 3): (one, 3),
            (1, 0): (one, 1), (2, 0): (one, 2), (3, 0): (one, 3),
            (1, 1): (a, 0), (1, 2): (one, 3), (1, 3): (a, 2),
            (2, 1): (F.neg(one), 3), (2, 2): (b, 0), (2, 3): (F.neg(b), 1),
            (3, 1): (F.neg(a), 2), (3, 2): (b, 1), (3, 3): (F.neg(ab), 0),
        }
        xs, ys = self.split(x), self.split(y)
        out = [F.zero() for _ in range(4)]
        for k in range(4):
            for kk in range(4):
                c, target = table[(k, kk)]
                out[target] = F.add(out[target], F.mul(c, F.mul(xs[k], ys[kk])))
        return self.join(out)

    def reg_trace(self, x):
        return 4 * self.f.trace(self.split(x)[0])


class Component:
    def __init__(self, label, D, n, gen_images, center):
        self.label, self.D, self.n, self.center = label, D, n, center
        self.gen_images = [tuple(tuple(e) for e in m) for m in gen_images]

    def mat_mul(self, x, y):
        n, D = self.n, self.D
        out = []
        for i in range(n):
            for l in range(n):
                acc = D.zero()
                for j in range(n):
                    acc = D.add(acc, D.mul(x[i * n + j], y[j * n + l]))
                out.append(acc)
        return tuple(out)

    def identity(self):
        n, D = self.n, self.D
        return tuple(D.one() if i == l else D.zero() for i in range(n) for l in range(n))

    def reg_trace(self, x):
        return sum((self.D.reg_trace(x[k * self.n + k]) for k in range(self.n)), Fraction(0))


# ---------------------------------------------------------------- helpers

Q = Field([0, 1])


def q(*vals):
    return tuple(Fraction(v) for v in vals)


def qmat(rows):
    """Integer matrix over D = Q."""
    return [q(v) for row in rows for v in row]


def cyclo_field(m):
    if m <= 2:
        return Q
    units, complete = cyclotomic_units(m)
    return Field(cyclotomic_poly(m), units=units, units_complete=complete)


def cyclotomic_units(m):
    """Generators of the units of Q(zeta_m) modulo torsion, and whether they are known to be complete."""
    deg = sympy.totient(m)
    if deg <= 2:
        return [], True  # computed live
    f = Field(cyclotomic_poly(m))
    z = f.theta_pow(1)

    def zpow(k):
        r = f.one()
        for _ in range(k % m):
            r = f.mul(r, z)
        return r

    def inv(a):
        # solve a * x = 1 by linear algebra over Q
        M = sympy.Matrix([[f.mul(a, f.theta_pow(j))[i] for j in range(f.deg)] for i in range(f.deg)])
        sol = M.LUsolve(sympy.Matrix([1] + [0] * (f.deg - 1)))
        return tuple(Fraction(int(sympy.fraction(v)[0]), int(sympy.fraction(v)[1])) for v in sol)

    one = f.one()
    units = []
    fac = sympy.factorint(m)
    if len(fac) == 1:
        # (1 - z^a) / (1 - z), 1 < a < m/2, gcd(a, m) = 1
        base = inv(f.add(one, f.neg(z)))
        for a in range(2, (m + 1) // 2):
            if math.gcd(a, m) == 1:
                units.append(f.mul(f.add(one, f.neg(zpow(a))), base))
        return units, True
    if m == 12:
        return [f.add(one, f.neg(z))], True
    # composite conductor: 1 - z^a are units; generators up to finite index
    for a in range(1, (m + 1) // 2):
        if math.gcd(a, m) == 1:
            units.append(f.add(one, f.neg(zpow(a))))
    rank = deg // 2 - 1
    return units[:max(rank, 1)] if rank > 0 else [], False


def power(comp_field, k, m):
    """zeta_m^k in Q(zeta_m) (m <= 2 means +-1 in Q)."""
    if m == 1:
        return q(1)
    if m == 2:
        return q((-1) ** (k % 2))
    return comp_field.theta_pow(k % m)


# ---------------------------------------------------------------- groups

def abelian_components(orders):
    """Components of Q[C_{n1} x ... x C_{nk}] with generator images."""
    comps = []
    seen = set()
    ranges = [range(n) for n in orders]
    import itertools
    for b in itertools.product(*ranges):
        if b in seen:
            continue
        e = 1
        for bk, nk in zip(b, orders):
            e = math.lcm(e, nk // math.gcd(bk, nk))
        orbit = set()
        for u in range(1, e + 1):
            if math.gcd(u, e) == 1:
                orbit.add(tuple((u * bk) % nk for bk, nk in zip(b, orders)))
        seen |= orbit
        F = cyclo_field(e)
        imgs = []
        for bk, nk in zip(b, orders):
            imgs.append([power(F, bk * e // nk, e)])
        D = FieldAlg(F)
        label = "chi" + "".join(str(v) for v in b) + ("" if e <= 2 else f"_Q(zeta{e})")
        comps.append(Component(label, D, 1, imgs, F))
    return comps


def linear_Q(signs_list, label_prefix="lin"):
    comps = []
    for signs in signs_list:
        imgs = [[q(s)] for s in signs]
        label = label_prefix + "".join("+" if s > 0 else "-" for s in signs)
        comps.append(Component(label, FieldAlg(Q), 1, imgs, Q))
    return comps


def signs2(k):
    import itertools
    return list(itertools.product([1, -1], repeat=k))


def group_D4():
    comps = linear_Q(signs2(2))
    comps.append(Component("M2(Q)", FieldAlg(Q), 2,
                           [qmat([[0, -1], [1, 0]]), qmat([[1, 0], [0, -1]])], Q))
    return ["r", "s"], comps


def group_D6():
    comps = linear_Q(signs2(2))
    comps.append(Component("M2(Q)_zeta6", FieldAlg(Q), 2,
                           [qmat([[0, -1], [1, 1]]), qmat([[1, 1], [0, -1]])], Q))
    comps.append(Component("M2(Q)_zeta3", FieldAlg(Q), 2,
                           [qmat([[0, -1], [1, -1]]), qmat([[1, -1], [0, -1]])], Q))
    return ["r", "s"], comps


def hamilton():
    return QuatAlg(Q, q(-1), q(-1))


def quat_elem(D, c0, c1, c2, c3):
    return D.join([q(c0), q(c1), q(c2), q(c3)])


def group_Q8():
    comps = linear_Q(signs2(2))
    H = hamilton()
    comps.append(Component("H(-1,-1)", H, 1,
                           [[quat_elem(H, 0, 1, 0, 0)], [quat_elem(H, 0, 0, 1, 0)]], Q))
    return ["i", "j"], comps


def group_Q8xC2():
    gens, base = group_Q8()
    comps = []
    for c in (1, -1):
        for comp in base:
            scalar = comp.D.one() if c == 1 else tuple(-v for v in comp.D.one())
            ident = [scalar if i == l else comp.D.zero() for i in range(comp.n) for l in range(comp.n)]
            imgs = [list(m) for m in comp.gen_images] + [ident]
            comps.append(Component(comp.label + ("x+" if c == 1 else "x-"), comp.D, comp.n, imgs, comp.center))
    return gens + ["c"], comps


def group_Q12():
    comps = linear_Q([(1, 1), (1, -1)])
    Fi = cyclo_field(4)
    comps.append(Component("Q(i)", FieldAlg(Fi), 1, [[Fi.const(-1)], [Fi.theta_pow(1)]], Fi))
    comps.append(Component("M2(Q)", FieldAlg(Q), 2,
                           [qmat([[0, -1], [1, -1]]), qmat([[1, -1], [0, -1]])], Q))
    D = QuatAlg(Q, q(-1), q(-3))
    x = D.join([q(Fraction(1, 2)), q(0), q(Fraction(1, 2)), q(0)])
    comps.append(Component("H(-1,-3)", D, 1, [[x], [quat_elem(D, 0, 1, 0, 0)]], Q))
    return ["x", "y"], comps


def group_Q16():
    comps = linear_Q(signs2(2))
    comps.append(Component("M2(Q)", FieldAlg(Q), 2,
                           [qmat([[0, -1], [1, 0]]), qmat([[1, 0], [0, -1]])], Q))
    F = Field([-2, 0, 1])  # Q(sqrt 2), theta = sqrt 2
    D = QuatAlg(F, F.const(-1), F.const(-1))
    h = (Fraction(0), Fraction(1, 2))  # sqrt(2)/2
    z = F.zero()
    x = D.join([h, h, z, z])
    y = D.join([z, z, F.one(), z])
    comps.append(Component("H(-1,-1|Q(sqrt2))", D, 1, [[x], [y]], F))
    return ["x", "y"], comps


def group_A4():
    comps = linear_Q([(1, 1)])
    F3 = cyclo_field(3)
    comps.append(Component("Q(zeta3)", FieldAlg(F3), 1, [[F3.one()], [F3.theta_pow(1)]], F3))
    comps.append(Component("M3(Q)", FieldAlg(Q), 3,
                           [qmat([[-1, 0, 0], [0, -1, 0], [0, 0, 1]]),
                            qmat([[0, 0, 1], [1, 0, 0], [0, 1, 0]])], Q))
    return ["a", "c"], comps


# ---------------------------------------------------------------- closure

def build(group_id, gen_names, comps, expected_order):
    ident = tuple(c.identity() for c in comps)
    gens = [tuple(c.gen_images[k] for c in comps) for k in range(len(gen_names))]

    def mul(x, y):
        return tuple(c.mat_mul(a, b) for c, a, b in zip(comps, x, y))

    elems = [ident]
    index = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in index:
                    index[y] = len(elems)
                    elems.append(y)
                    nxt.append(y)
        frontier = nxt
    order = len(elems)
    if order != expected_order:
        raise SystemExit(f"{group_id}: closure has {order} elements, expected {expected_order}")
    dims = sum(c.n * c.n * c.D.t for c in comps)
    if dims != order:
        raise SystemExit(f"{group_id}: component dimensions sum to {dims}, expected {order}")
    table = [[index[mul(x, y)] for y in elems] for x in elems]
    inverse = [row.index(0) for row in table]
    gen_idx = [index[g] for g in gens]

    out_comps = []
    for ci, c in enumerate(comps):
        char = []
        for x in elems:
            char.append(c.reg_trace(x[ci]) / c.D.schur)
        center = {"min_poly": [str(v) for v in c.center.poly]}
        if c.center.integral_basis:
            center["integral_basis"] = c.center.integral_basis
        if c.center.units:
            center["unit_generators"] = [[str(v) for v in u] for u in c.center.units]
        center["units_complete"] = c.center.units_complete
        entry = {
            "label": c.label,
            "n": c.n,
            "kind": "quaternion" if isinstance(c.D, QuatAlg) else "field",
            "center": center,
            "schur_index": c.D.schur,
            "char_degree": c.n * c.D.schur,
            "char_values": [str(v) for v in char],
            "rho_images": [[str(v) for e in x[ci] for v in e] for x in elems],
        }
        if isinstance(c.D, QuatAlg):
            entry["quaternion"] = {"a": [str(v) for v in c.D.a], "b": [str(v) for v in c.D.b]}
        out_comps.append(entry)

    return {
        "registry_version": REGISTRY_VERSION,
        "id": group_id,
        "order": order,
        "generators": gen_idx,
        "generator_names": gen_names,
        "mul_table": table,
        "inverse": inverse,
        "components": out_comps,
    }


def all_groups():
    out = []
    for n in range(1, 17):
        comps = abelian_components([n])
        out.append((f"C{n}", ["g"], comps, n))
    out.append(("C2xC2", ["a", "b"], abelian_components([2, 2]), 4))
    out.append(("C2xC4", ["a", "b"], abelian_components([2, 4]), 8))
    for gid, fn, order in [("D4", group_D4, 8), ("D6", group_D6, 12), ("Q8", group_Q8, 8),
                           ("Q12", group_Q12, 12), ("Q16", group_Q16, 16),
                           ("Q8xC2", group_Q8xC2, 16), ("A4", group_A4, 12)]:
        gens, comps = fn()
        out.append((gid, gens, comps, order))
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "..", "registry"))
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)
    for gid, gens, comps, order in all_groups():
        doc = build(gid, gens, comps, order)
        path = os.path.join(args.out, gid + ".json")
        with open(path, "w") as fh:
            json.dump(doc, fh, indent=1)
            fh.write("\n")
        print(f"{gid}: order {doc['order']}, {len(doc['components'])} components")


if __name__ == "__main__":
    main()
