"""critdisc: critical discriminants of rational maps fixing infinity.

Sub-packages, bottom-up:

    exactnum   rationals, p-adic valuations, factorization
    upoly      polynomials over Q and F_p, resultants, discriminants
    family     standard-form pairs, the Wronskian, membership, conjugation
    reduction  reduction mod p, local descent, Delta(phi), Szpiro reports
    lattes     Lattes maps of elliptic curves y^2 = f(x)
    cli        the `critdisc` command line
"""
