"""Separating the exponential decay from the polynomial part.

The squared spherical value k(lam) = |closed form|^2 of the functional decays
like c exp(-pi |lam| / 2) |lam|^-2 along the principal series.  Dividing by
the envelope exposes the plateau constant c, which is estimated here by
Richardson extrapolation over a doubling ladder (no closed form for c is
asserted; the point is the shape of the decay).
"""

from triform import decay_constant, normalized_decay

ladder = [25.0 * 2 ** n for n in range(5)]

for tau, taup in ((0.0, 0.0), (1j, 2j)):
    print(f"tau = {tau}, tau' = {taup}")
    prev = None
    for t in ladder:
        r = normalized_decay(tau, taup, 1j * t)
        note = "" if prev is None else f"   rel change {abs(r - prev) / prev:.2e}"
        print(f"  |lam| = {t:5.0f}: k * exp(pi|lam|/2) |lam|^2 = {r:.8f}{note}")
        prev = r
    c, err = decay_constant(tau, taup, ladder)
    print(f"  extrapolated plateau constant: {c:.8f} +- {err:.1e}\n")

print("the raw squared value at |lam| = 400 is about "
      f"{normalized_decay(0, 0, 400j):.3g} * exp(-200 pi) / 400^2 ~ 1e-278,")
print("which is why every evaluation here happens in log space.")
