"""Smoke test for the `hilbert` extension module.

Build and install first:

    maturin build --release -m crates/py/Cargo.toml -o dist
    pip install dist/hilbert-*.whl
    python python/smoke_test.py
"""

import hilbert
from hilbert import IntZ, WittVector


def check(name, got, want):
    if got != want:
        raise SystemExit(f"FAIL {name}: got {got!r}, want {want!r}")
    print(f"ok   {name}")


def main():
    c1, c2 = IntZ.basis(1), IntZ.basis(2)
    check("C1*C2", (c1 * c2).coeffs(), {2: 2, 3: 3})
    check("parse", IntZ("x^2"), c1 + IntZ("2*C(x,2)"))
    check("comult C2", c2.comult(), {(0, 2): 1, (1, 1): 1, (2, 0): 1})
    check("antipode C2", c2.antipode().coeffs(), {1: 1, 2: 1})
    check("eval C3(-1)", IntZ.basis(3)(-1), -1)
    check("pair group-like", IntZ.basis(3).pair_group_like(-1), -1)
    check("frobenius identity", IntZ.basis(4).frobenius_identity(3), True)
    try:
        IntZ("1/2*x")
    except ValueError:
        print("ok   non-integral rejected")
    else:
        raise SystemExit("FAIL non-integral accepted")

    a = WittVector([1, 2, 3, 6], [4, 1, 0, 2], "Zmod:9")
    b = WittVector([1, 2, 3, 6], [2, 5, 7, 1], "Zmod:9")
    check("W mul Z/9", (a * b).coeffs(), ["8", "4", "7", "7"])
    check("W add inverse", (a + (-a)).coeffs(), ["0"] * 4)
    check("ghost", WittVector([1, 2], [1, 0]).ghost(), ["1", "1"])
    check("V_2", WittVector([1], [5]).verschiebung(2, [1, 2]).coeffs(), ["0", "5"])
    check("F_2 V_2", WittVector([1], [5]).verschiebung(2).frobenius(2).coeffs(), ["10"])
    check("teichmuller F_9", hilbert.teichmuller("g+1", [1, 3], "Fq:3,2").coeffs(), ["g+1", "0"])
    check("kernel F_3", len(hilbert.kernel([1, 3], "Fq:3,1", 3, "1", jobs=2)), 9)
    check("universal sum", hilbert.universal_poly("sum", 2, [1, 2]), "-a1*b1+a2+b2")

    bar = hilbert.bar_homology("exterior-deg1", stages=4)
    check("bar rows start", bar[0][:3], (0, 0, 1))
    cobar = hilbert.cobar_homology("divided-power", length=5, weight=5, jobs=2)
    check("cobar Gamma", [r for r in cobar if r[2]], [(0, 0, 1, []), (1, 1, 1, [])])

    d = hilbert.drinfeld(4)
    check("drinfeld C1*C1", d[("C1", "C1")], {"C1": "t", "C2": "2"})
    check("rees = drinfeld", hilbert.rees(4), d)
    check("rees at 1", hilbert.rees(2, at=1)[("C1", "C1")], {"C1": "1", "C2": "2"})

    gr = hilbert.associated_graded(hilbert.degree_filtration(3))
    check("gr ranks", sorted(gr.values()), [1, 1, 1, 1])
    t = hilbert.day_tensor(hilbert.degree_filtration(1), hilbert.degree_filtration(1))
    check("tensor gr", sum(hilbert.associated_graded(t).values()), 4)
    print("all smoke checks passed")


if __name__ == "__main__":
    main()
