import time

import symspec.sset as sset
import symspec.equivariant as eq
import symspec.spectra as sp

t0 = time.time()
tower = eq.SphereTower()
S = sp.sphere_spectrum(2, tower)
F = sp.free_F(1, sset.zero_sphere(), 2, tower)

XS = sp.smash_spectra(F, S)
m = sp.smash_map_spectra(
    XS, XS, sp.identity_spectrum_map(F), sp.identity_spectrum_map(S)
)
assert m == sp.identity_spectrum_map(XS)
m.validate()
print("identity functoriality ok", time.time() - t0)

bar = sp.bar_sphere(2, tower)
assert sp.bar_sphere(2, tower) is bar
XB = sp.smash_spectra(F, bar)
incl = sp.smash_map_spectra(
    XB, XS, sp.identity_spectrum_map(F), sp.bar_inclusion(bar, S)
)
incl.validate()
print("bar inclusion smash ok, mono:", incl.is_monomorphism())

SX = sp.smash_spectra(S, F)
comm = sp.smash_comm_iso(XS, SX)
unit_fwd, unit_inv = sp.smash_unit_iso(SX)
lat = unit_fwd.compose(comm).compose(incl)
lat.validate()
print("latching composite validates; levels:")
for n in range(3):
    src = lat.source.space(n)
    print(
        "  n=%d: L_nX nonbase=%d -> X_n nonbase=%d mono=%s"
        % (
            n,
            sum(1 for c in src.cell_ids() if c != src.basepoint),
            sum(
                1
                for c in F.space(n).cell_ids()
                if c != F.space(n).basepoint
            ),
            lat.level(n).is_monomorphism(),
        )
    )

# corner of two spectrum maps: unit inclusions into free spectra
pt = sp.point_spectrum(2, tower)
G = sp.free_F(1, sset.zero_sphere(), 2, tower)
f = sp.SpectrumMap(
    pt, F, [sset.constant_map(pt.space(n), F.space(n)) for n in range(3)]
)
g = sp.SpectrumMap(
    pt, G, [sset.constant_map(pt.space(n), G.space(n)) for n in range(3)]
)
f.validate()
corner = sp.pushout_product(f, g)
corner.validate()
print("corner of two spectrum maps ok, mono:", corner.is_monomorphism())
print("corner source levels nonbase:", [
    sum(1 for c in corner.source.space(n).cell_ids()
        if c != corner.source.space(n).basepoint)
    for n in range(3)
])
print("corner target levels nonbase:", [
    sum(1 for c in corner.target.space(n).cell_ids()
        if c != corner.target.space(n).basepoint)
    for n in range(3)
])
print("total", time.time() - t0)
