#!/usr/bin/env python3
"""Smoke test for the endoclass extension module.

Builds nothing itself: run `cargo build -p endoclass-py --release` first,
then `python3 python/smoke_test.py`.  The script copies the cdylib into a
temporary directory under the importable name and checks a spread of known
values end to end.
"""

import json
import os
import shutil
import sys
import tempfile

REPO = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def load_module():
    override = os.environ.get("ENDOCLASS_SO")
    candidates = [override] if override else [
        os.path.join(REPO, "target", "release", "libendoclass.so"),
        os.path.join(REPO, "target", "debug", "libendoclass.so"),
    ]
    source = next((c for c in candidates if c and os.path.exists(c)), None)
    if source is None:
        sys.exit("libendoclass.so not found; run `cargo build -p endoclass-py --release`")
    stage = tempfile.mkdtemp(prefix="endoclass-py-")
    shutil.copy(source, os.path.join(stage, "endoclass.so"))
    sys.path.insert(0, stage)
    import endoclass
    return endoclass


def main():
    ec = load_module()
    checks = 0

    def ok(condition, label):
        nonlocal checks
        if not condition:
            sys.exit(f"FAIL: {label}")
        checks += 1

    ok(ec.units(7) == [1, 2, 3, 4, 5, 6], "units mod 7")
    ok(ec.euler_phi(16) == 8, "euler_phi(16)")
    ok(ec.multiplicative_order(2, 7) == 3, "order of 2 mod 7")

    ok(ec.mult_type(3, 7) == [0, 0, 1, 1, 2, 2], "cubic type at 7")
    ok(ec.cm_types(7) == ["000111", "001011"], "CM types at 7")
    ok(ec.decompose(9) == [("000111", "001011")], "decomposition at 9")
    ok(ec.decompose_twisted(5, 2) == ["0011"], "twisted decomposition at 5")
    ok(ec.twist_set(7) == [(2, "001011", True), (4, "001011", True)], "twist set at 7")
    ok(ec.twist_closed_form(7) == [2, 4], "closed form at 7")
    ok(ec.twist_closed_form(8) is None, "no closed form at 8")
    ok(ec.middle_unit_exceptions(10000) == [4, 6, 10], "middle-unit exceptions")

    rows = ec.bernoulli_numbers(6)
    odd_rows = [r for r in rows if r[1]]
    ok(len(odd_rows) == 1 and odd_rows[0][3] == ["-2/3"] and not odd_rows[0][4],
       "Bernoulli value at 6")
    ok(ec.vanishing_counts(12) == (0, 2), "vanishing counts at 12")

    table = ec.algebra_table(8)
    ok(len(table) == 3 and any("Mat_2(Q(sqrt(-2)))" in row for row in table),
       "algebra table at 8")
    ok(ec.classify_cubic("x^3-x", 7) == "Q(zeta_7) (+) Mat_3(Q(sqrt(-7)))",
       "worked cubic at 7")
    descriptor = json.loads(ec.classify_cubic_json("x^3-x", 7))
    ok(descriptor["dimension_over_q"] == 24, "worked cubic dimension")

    ok(ec.genus(7, [1, 1, 1]) == 6, "genus at 7")
    ok(ec.genus(5, [1, 1, 1]) == 4, "genus at 5")
    ok(ec.new_part(7, [1, 1, 1]) == 6, "new part at 7")
    ok(ec.basis_exponents(5, 3) == [(2, 1), (3, 1), (4, 1), (4, 2)], "basis at 5")

    field = json.loads(ec.subfield(7, [1, 2, 4]))
    ok(field["quadratic_discriminant"] == -7, "quadratic subfield of Q(zeta_7)")

    z = ec.Cyclotomic.zeta(5)
    one = ec.Cyclotomic.rational("1")
    ok(z ** 5 == one, "zeta_5^5 = 1")
    ok(z.minimal_polynomial() == ["1", "1", "1", "1", "1"], "min poly of zeta_5")
    ok((z + (-z)).is_zero(), "z - z = 0")
    ok(z.inverse() * z == one, "inverse")
    ok(z.trace() == "-1", "trace of zeta_5")
    ok(z.galois(2) == z * z, "Galois action")
    ok(z.conjugate() == z.galois(4), "conjugation is inversion")
    re, im = ec.Cyclotomic.zeta(4).approx()
    ok(abs(re) < 1e-12 and abs(im - 1.0) < 1e-12, "complex embedding of i")
    third = ec.Cyclotomic.rational("-2/3")
    ok(third.as_rational() == "-2/3" and third.conductor() == 1, "rational constant")

    passed, report = ec.verify("tables")
    ok(passed and report.count("\n") >= 9, "tables suite")

    print(f"smoke test passed ({checks} checks)")


if __name__ == "__main__":
    main()
