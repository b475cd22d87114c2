import itertools
import random
import sys
import time

sys.path.insert(0, "tests")
from _helpers import (
    F3, F5, F7, Q, doubling_map, inf, monomial_trace_oracle, pt,
    random_bipoly, random_correspondence, random_rational_map, rf,
    walk_count_oracle,
)
from corrdyn import oper
from corrdyn.corr import build, compose, corr_sum
from corrdyn.errors import CorrdynError, PreconditionError, TraceUndefined
from corrdyn.fields import make_extension, make_prime_field
from corrdyn.graph import (
    backward_closure, enumerate_complete_sets, path_count, scholium_check,
)
from corrdyn.poly import embedding

t0 = time.perf_counter()


def mark(label):
    global t0
    now = time.perf_counter()
    print(f"{label}: {now - t0:.2f}s")
    t0 = now


# criterion 2 at full size
rng = random.Random(2)
checked = 0
for _ in range(50):
    c1 = random_correspondence(rng, F7, 3, 3)
    c2 = random_correspondence(rng, F7, 3, 3)
    cc = compose(c2, c1)
    done = 0
    while done < 10:
        f = random_rational_map(rng, F7, 2)
        try:
            lhs = oper.td_apply(cc, f)
            rhs = oper.td_apply(c2, oper.td_apply(c1, f))
        except TraceUndefined:
            continue
        assert lhs == rhs
        done += 1
        checked += 1
mark(f"crit2 50 pairs ({checked} identities)")

# criterion 4 at full size
F9 = make_extension(F3, 2)
F25 = make_extension(F5, 2)
F4 = make_extension(make_prime_field(2), 2)
F13 = make_prime_field(13)
pool = [F3, F5, F7, F13, F9, F25, F4]
rng = random.Random(4)
checked = 0
for i in range(100):
    fld = pool[i % len(pool)]
    c = random_correspondence(rng, fld, 3, 3)
    sums = oper.td_power_sums(c, 6)
    b = pt(fld, rng.randrange(fld.order))
    for e in range(7):
        want = monomial_trace_oracle(c, e, b, rng=random.Random(1))
        if want is None:
            continue
        got = sums[e].eval_affine(b.value())
        if got is None:
            continue
        E = want.field
        emb = embedding(fld, E) if E != fld else (lambda z: z)
        assert emb(got) == want, (i, e)
        checked += 1
mark(f"crit4 100 corrs ({checked} values)")

# criterion 5 at full size
rng = random.Random(5)
applies_count = 0
for fld in (F3, F5):
    q = fld.order
    for _ in range(12):
        while True:
            dy = rng.randrange(1, 3)
            dx = rng.randrange(dy, 4)
            try:
                c = build(fld, F=random_bipoly(rng, fld, dx, dy))
                break
            except CorrdynError:
                continue
        for a in list(range(q)) + [None]:
            seed = inf(fld) if a is None else pt(fld, a)
            rep = backward_closure(c, seed, max_ext=2, max_size=32,
                                   rng=random.Random(0))
            out = scholium_check(c, rep, rng=random.Random(0))
            if out["applies"]:
                applies_count += 1
                assert out["forward_complete"] and out["equiramified"] \
                    and out["balanced"]
mark(f"crit5 24 corrs (applies={applies_count})")

# criterion 6 at full size
def lin_branch_checks(c, field):
    reports = enumerate_complete_sets(c, 1)
    certified = [r for r in reports if r.status == "Certified"]
    good = [r for r in certified if r.classification.equiramified]
    candidates = [list(r.vertices) for r in certified]
    candidates += [[inf(field)], [pt(field, 0)]]
    candidates.sort(key=len)
    verdict = None
    for S in candidates:
        try:
            verdict = oper.lin_finitary_test(c, S, 12, rng=random.Random(0))
            break
        except PreconditionError:
            continue
    if verdict is None:
        return None, len(good)
    return verdict, len(good)


rng = random.Random(60)
noann = three_plus = tested = 0
for field in (F3, F5):
    q = field.order
    for _ in range(15):
        a1, a2 = rng.randrange(1, q), rng.randrange(1, q)
        b1, b2 = rng.randrange(q), rng.randrange(q)
        c = corr_sum(build(field, f=rf(field, [b1, a1])),
                     build(field, f=rf(field, [b2, a2])))
        verdict, ngood = lin_branch_checks(c, field)
        if verdict is None:
            continue
        tested += 1
        if verdict.status == "NoAnnihilatorUpToDegree":
            noann += 1
            assert ngood <= 2
        if ngood >= 3:
            three_plus += 1
            assert verdict.status in ("StabilizedCandidate",
                                      "CertifiedAnnihilated")
rng = random.Random(6)
for field in (F3, F5):
    for _ in range(12):
        while True:
            try:
                c = build(field, F=random_bipoly(rng, field, 2, 2))
                break
            except CorrdynError:
                continue
        verdict, ngood = lin_branch_checks(c, field)
        if verdict is None:
            continue
        tested += 1
        if verdict.status == "NoAnnihilatorUpToDegree":
            noann += 1
            assert ngood <= 2
        if ngood >= 3:
            three_plus += 1
            assert verdict.status in ("StabilizedCandidate",
                                      "CertifiedAnnihilated")
canned = corr_sum(build(F5, f=rf(F5, [0, 2])), build(F5, f=rf(F5, [0, 3])))
verdict, ngood = lin_branch_checks(canned, F5)
assert ngood >= 3 and verdict.status in ("StabilizedCandidate",
                                         "CertifiedAnnihilated")
three_plus += 1
mark(f"crit6 (tested={tested} noann={noann} three_plus={three_plus})")

# criterion 8 at full size
for field in (Q, F7):
    dup = doubling_map(field)
    pool4 = [pt(field, 0), pt(field, 1), pt(field, -1), inf(field)]
    subs = [list(s) for k in (1, 2)
            for s in itertools.combinations(range(4), k)]
    applicable = 0
    for si, sj, sk in itertools.permutations(range(len(subs)), 3):
        A, B, C = subs[si], subs[sj], subs[sk]
        if set(A) & set(B) or set(A) & set(C) or set(B) & set(C):
            continue
        S = [pool4[i] for i in A]
        Sp = [pool4[i] for i in B]
        Spp = [pool4[i] for i in C]
        for n in range(1, 11):
            out = oper.almost_split(dup, S, Sp, n, Spp=Spp,
                                    rng=random.Random(0))
            assert out["complement_ok"] and out["dim_bound_ok"]
            assert out["intersection_ok"] is not False
            if out["intersection_ok"] is True:
                applicable += 1
    print("  field", field.spec_string(), "applicable", applicable)
mark("crit8 both fields")

# criterion 3 at full size
sq5 = build(F5, f=rf(F5, [0, 0, 1]))
dbl5 = build(F5, f=rf(F5, [0, 2]))
recip5 = build(F5, F=__import__("corrdyn.poly", fromlist=["BiPoly"]).BiPoly(
    F5, {(1, 1): F5.one, (0, 0): -F5.one}))
catalog = []
for c in (sq5, dbl5, recip5):
    for K in (1, 2):
        for r in enumerate_complete_sets(c, K):
            if r.status == "Certified" and len(r.vertices) <= 12:
                catalog.append((c, r))
pairs = 0
for c, r in catalog:
    S = list(r.vertices)
    for x in S:
        for y in S:
            for n in range(7):
                a = path_count(c, S, x, y, n)
                b = walk_count_oracle(c, S, x, y, n, rng=random.Random(0))
                assert a == b
                pairs += 1
mark(f"crit3 ({len(catalog)} sets, {pairs} checks)")
print("BENCH DONE")
