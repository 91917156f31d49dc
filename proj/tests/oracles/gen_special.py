"""Reference values for special functions, computed with mpmath at 40 digits.

Run: python3 tests/oracles/gen_special.py > tests/oracles/special_values.inc
"""
import mpmath as mp

mp.mp.dps = 40


def c(z):
    z = mp.mpc(z)
    return "{%r, %r}" % (float(z.real), float(z.imag))


def row(*zs):
    return "{" + ", ".join(c(z) for z in zs) + "},"


def beta(s):
    return mp.dirichlet(s, [0, 1, 0, -1])


print("// generated by gen_special.py (mpmath)")
print("struct Ref1 { std::complex<double> arg, val; };")
print("struct Ref2 { std::complex<double> a; double y; std::complex<double> val; };")

pts = [0.5, 1, 2.5, mp.mpc(0.3, 5), mp.mpc(0.25, -2), mp.mpc(-2.5, 1), mp.mpc(0.75, 40),
       mp.mpc(3, 150), mp.mpc(0.1, -200), mp.mpc(-7.3, 0), mp.mpc(12, 3)]
print("inline const Ref1 kGammaRef[] = {")
for s in pts:
    print("  " + row(s, mp.gamma(s)))
print("};")

zpts = [2, 4, 0.5, 0, mp.mpc(0.5, 14.134725), mp.mpc(0.3, 20), mp.mpc(2, -7), mp.mpc(0.5, 99),
        mp.mpc(3, 60), mp.mpc(-1.5, 2), mp.mpc(0.5, 250), mp.mpc(0.6, -480)]
print("inline const Ref1 kZetaRef[] = {")
for s in zpts:
    print("  " + row(s, mp.zeta(s)))
print("};")

bpts = [1, 2, 0.5, 0, 3, mp.mpc(0.5, 6), mp.mpc(0.25, -30), mp.mpc(1, 99), mp.mpc(2.5, 77),
        mp.mpc(0.5, 150), mp.mpc(-0.5, 3), mp.mpc(0.6, -480)]
print("inline const Ref1 kBetaRef[] = {")
for s in bpts:
    print("  " + row(s, beta(s)))
print("};")

kpts = [2, 4, mp.mpc(0.4, 0), mp.mpc(0.5, 3), mp.mpc(0.75, -2), mp.mpc(1.6, 10), mp.mpc(0.5, 120),
        mp.mpc(0.5, 480)]
print("inline const Ref1 kZetaKRef[] = {")
for s in kpts:
    print("  " + row(s, mp.zeta(s) * beta(s)))
print("};")

avals = [-3, -1, 0, mp.mpf("-0.5"), mp.mpf("0.25"), mp.mpf("0.5"), 1, mp.mpf("1.25"), 2, 5,
         mp.mpc(0.4, 5), mp.mpc(0.25, -2), mp.mpc(0.75, 2), mp.mpc(0.6, -5), mp.mpc(0.4, 5),
         mp.mpc(-1, 0.5), mp.mpc(2, 30)]
yvals = [0.01, 0.3, 1, 1.4, 1.6, 3, 10, 40, 120]
print("inline const Ref2 kUpperGammaRef[] = {")
for a in avals:
    for y in yvals:
        v = mp.gammainc(a, y, mp.inf)
        print("  {%s, %r, %s}," % (c(a), float(y), c(v)))
print("};")
