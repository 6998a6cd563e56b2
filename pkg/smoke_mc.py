import time

import symspec.sset as sset
import symspec.equivariant as eq
import symspec.symseq as sq
import symspec.spectra as sp
import symspec.modelcheck as mc

t0 = time.time()
tower = eq.SphereTower()


def point_into(X):
    pt = sp.point_spectrum(X.bound, tower)
    return sp.SpectrumMap(
        pt,
        X,
        [
            sset.constant_map(pt.space(n), X.space(n))
            for n in range(X.bound + 1)
        ],
    )


# latching examples
for K, kname in ((sset.zero_sphere(), "S0"), (sset.circle(), "S1")):
    for m in (0, 1, 2):
        F = sp.free_F(m, K, 3, tower)
        for n in range(4):
            L, nat = mc.latching(F, n)
            pointlike = sset.is_pointlike(L.space)
            iso = nat.is_isomorphism()
            expect_point = n <= m
            assert pointlike == expect_point, (kname, m, n)
            if n > m:
                assert iso, (kname, m, n)
        print("latching F_%d(%s): closed form ok" % (m, kname))

try:
    mc.latching(sp.free_F(0, sset.circle(), 2, tower), 5)
    raise SystemExit("no IndexError")
except IndexError as e:
    print("out of bound:", e)

# cofibration example 1: point -> F_n K
for n in (0, 1, 2):
    F = sp.free_F(n, sset.circle(), 3, tower)
    rep = mc.stable_cofibration_check(point_into(F))
    print("cofib point->F_%d(S1):" % n, rep.overall, rep.to_json()["levels"])
    assert rep.overall

# example 3: X2 = S0 with trivial action, others points
levels = [
    eq.trivial_action(sset.point(), 0),
    eq.trivial_action(sset.point(), 1),
    eq.trivial_action(sset.zero_sphere(), 2),
]
seq = sq.SymmetricSequence(levels, name="badX")


def build(n):
    sm = sset.smash(tower.s1, seq.space(n))
    return sm, sset.constant_map(sm.space, seq.space(n + 1))


bad = sp.SymmetricSpectrum(tower, seq, build, name="badX")
assert sp.validate_spectrum(bad)["ok"]
rep = mc.stable_cofibration_check(point_into(bad))
print("cofib point->badX:", rep.overall, rep.first_failure())
assert not rep.overall and rep.first_failure()["level"] == 2
assert rep.first_failure()["monomorphism"] is True
assert rep.first_failure()["acts_freely"] is False

# lifting: identity always lifts
circ = sset.circle()
idc = sset.identity_map(circ)
bnd = sset.subset_inclusion(sset.boundary_plus(1), sset.delta_plus(1))
print("lift vs identity:", mc.has_lifting_property(bnd, idc)["verdict"])

# reversed endpoints
collapse = sset.constant_map(sset.delta_plus(1), sset.delta_plus(0))
# constant_map sends everything to base; need the genuine collapse
D1, D0 = sset.delta_plus(1), sset.delta_plus(0)
v = [c for c in D0.cell_ids() if c != D0.basepoint][0]
assign = {D1.basepoint: ((), D0.basepoint)}
for c in D1.cell_ids():
    if c == D1.basepoint:
        continue
    k = D1.dim_of[c]
    assign[c] = (tuple(range(k - 1, -1, -1)), v)
p = sset.SimplicialMap(D1, D0, assign)
assert p.is_valid()
res = mc.has_lifting_property(bnd, p)
print("reversed-endpoints verdict:", res["verdict"], "checked", res["checked"])
assert res["verdict"] == "no"
wt = res["witness"]["top"]
print("witness top:", {c: wt.assign[c] for c in sorted(wt.assign)})

# budget
res = mc.has_lifting_property(bnd, p, budget=3)
print("tiny budget:", res["verdict"])

# retract argument fixture: f = p . i with p RLP against f
X0 = sset.delta_plus(0)
i = sset.subset_inclusion(X0, D1) if False else None
# vertex-0 inclusion into Delta[1]+
vi = {X0.basepoint: ((), D1.basepoint)}
v0 = D1.subset_ids[(0,)]
vX = [c for c in X0.cell_ids() if c != X0.basepoint][0]
vi[vX] = ((), v0)
i = sset.SimplicialMap(X0, D1, vi)
assert i.is_valid()
f = p.compose(i)  # identity of Delta[0]+
assert mc.has_lifting_property(f, p)["verdict"] == "yes"
h = mc.find_lift(f, p, top=i, bottom=sset.identity_map(D0))
assert h is not None
assert h.compose(f) == i and p.compose(h) == sset.identity_map(D0)
print("retract argument: lift found, retract identities hold")

# theorem check example 1
F1 = sp.free_F(1, sset.zero_sphere(), 3, tower)
rep = mc.pushout_product_theorem_check(point_into(F1), point_into(F1))
print("theorem check f=g=pt->F1S0:", {k: v for k, v in rep["clauses"].items()})
assert rep["clauses"]["stable_cofibration"]["confirmed"] is True

# mixed arm example 3
F1s = sp.free_F(1, sset.circle(), 3, tower)
rep = mc.pushout_product_theorem_check(point_into(F1s), bnd)
print("theorem check mixed:", rep["clauses"]["monomorphism"])
assert rep["clauses"]["monomorphism"]["confirmed"] is True

# level_classify on lambda_0
lam = sp.lambda_map(0, 2, tower)
cls = mc.level_classify(lam)
print("lambda0 classify:", cls["monomorphism_failures"], cls["homology_failures"])
assert not cls["monomorphism"] and 2 in cls["monomorphism_failures"]
assert {"level": 2, "degree": 2} in cls["homology_failures"]

# identity classify
ident = sp.identity_spectrum_map(F1)
cls = mc.level_classify(ident)
assert cls["monomorphism"] and cls["homology_level_equivalence"]
print("identity classify ok")

# cylinder retraction classify
Mf, ci, r, s = sp.mapping_cylinder(sp.identity_spectrum_map(F1s))
cls = mc.level_classify(r)
print("cylinder r classify:", cls["monomorphism"], cls["homology_level_equivalence"])
assert not cls["monomorphism"] and cls["homology_level_equivalence"]

print("total", time.time() - t0)
