"""Reference values for the unit tests, computed at 50 digits with mpmath.

Run: python3 tests/oracles/freeze_values.py
The printed literals are pasted into tests/unit/oracle_values.hpp.
"""
import mpmath as mp

mp.mp.dps = 50


def disp(m, n, beta):
    """<m|D(beta)|n> from the associated Laguerre form."""
    x = abs(beta) ** 2
    if m >= n:
        k = m - n
        return (mp.sqrt(mp.factorial(n) / mp.factorial(m)) * beta ** k * mp.exp(-x / 2)
                * mp.laguerre(n, k, x))
    k = n - m
    return (mp.sqrt(mp.factorial(m) / mp.factorial(n)) * (-mp.conj(beta)) ** k * mp.exp(-x / 2)
            * mp.laguerre(m, k, x))


def symbol_pure(amps, s, alpha, levels=120):
    """2 pi Tr[Delta_{-s}(alpha) |psi><psi|] with Delta_{-s} = D(alpha) z^N D(alpha)^dag / ((1+s) pi),
    z = (s-1)/(s+1): (2/(1+s)) sum_k z^k |<k|D(-alpha)|psi>|^2."""
    z = (s - 1) / (s + 1)
    total = mp.mpf(0)
    for k in range(levels):
        c = mp.fsum(disp(k, n, -alpha) * a for n, a in enumerate(amps))
        total += z ** k * abs(c) ** 2
    return 2 / (1 + s) * total


def coherent_amps(c, n):
    return [mp.exp(-abs(c) ** 2 / 2) * c ** k / mp.sqrt(mp.factorial(k)) for k in range(n)]


def cat_amps(c, sign, n):
    x = abs(c) ** 2
    norm = 1 / mp.sqrt(2 + 2 * sign * mp.exp(-2 * x))
    a = coherent_amps(c, n)
    return [norm * (a[k] + sign * (-1) ** k * a[k]) for k in range(n)]


def show(name, v):
    v = mp.mpc(v)
    print(f"{name}: {mp.nstr(v.real, 20)} {mp.nstr(v.imag, 20)}")


b = mp.mpc("0.7", "-0.4")
for m, n in [(0, 0), (3, 1), (1, 3), (5, 5), (10, 2)]:
    show(f"D({m},{n}) beta=0.7-0.4i", disp(m, n, b))
big = mp.mpf(12) * mp.expj(mp.mpf("0.3"))
for m, n in [(30, 20), (20, 30), (47, 0), (40, 40)]:
    show(f"D({m},{n}) beta=12e^0.3i", disp(m, n, big))

fock1 = [0, 1]
show("symbol fock(1) s=0.3 alpha=0.4+0.2i", symbol_pure(fock1, mp.mpf("0.3"), mp.mpc("0.4", "0.2")))
show("symbol fock(1) s=0 alpha=0.4+0.2i", symbol_pure(fock1, mp.mpf(0), mp.mpc("0.4", "0.2")))
cat = cat_amps(mp.mpc("1.2", "0.3"), -1, 60)
show("symbol cat(1.2+0.3i,-) s=0 alpha=0.1-0.5i", symbol_pure(cat, mp.mpf(0), mp.mpc("0.1", "-0.5")))
show("symbol cat(1.2+0.3i,-) s=0.6 alpha=0.1-0.5i", symbol_pure(cat, mp.mpf("0.6"), mp.mpc("0.1", "-0.5")))
