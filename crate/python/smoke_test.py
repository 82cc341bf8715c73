#!/usr/bin/env python3
"""End-to-end exercise of the aal_py extension module.

Builds the module if needed, imports it from the cargo target
directory, and walks through the main surface: named algebras,
validation, filters, congruences, Leibniz reductions, KC, and the
modal report. Exits nonzero on the first failed check.
"""

import shutil
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def ensure_module():
    stage = ROOT / "target" / "pymod"
    built = ROOT / "target" / "debug" / "libaal_py.so"
    if not built.exists():
        subprocess.run(
            ["cargo", "build", "-p", "aal-py"], cwd=ROOT, check=True
        )
    stage.mkdir(parents=True, exist_ok=True)
    target = stage / "aal_py.so"
    if not target.exists() or built.stat().st_mtime > target.stat().st_mtime:
        shutil.copy2(built, target)
    sys.path.insert(0, str(stage))


ensure_module()
import aal_py  # noqa: E402

failures = []


def check(label, got, want):
    ok = got == want
    print(f"{'ok' if ok else 'FAIL'}  {label}: {got!r}")
    if not ok:
        failures.append((label, got, want))


# Named De Morgan monoids.
c4 = aal_py.Algebra.named("C4")
check("C4 size", c4.size, 4)
check("C4 labels", c4.labels(), {0: "negf2", 1: "e", 2: "f", 3: "f2"})
check("C4 axioms all pass", all(ok for _, ok, _ in c4.validate()), True)
check("C4 pinned by its diagram", aal_py.named_solution_count("C4"), 1)
check("C4 fuse(f,f)", c4.eval("fuse(v1,v1)", {1: 2}), 3)

s3 = aal_py.Algebra.named("S3")
check("S3 axioms all pass", all(ok for _, ok, _ in s3.validate()), True)
s3_flags = s3.rt_il_weml(2)
check("S3 inconsistency sequence fails", s3_flags["il_ok"], False)
check("S3 f-meet not least", s3_flags["least_is_fmeet"], False)

# Filters, congruences, Leibniz.
check("C4 filters", c4.filters(), [[1, 2, 3], [0, 1, 2, 3]])
check("C4 congruence count", len(c4.congruences()), 2)
check("C4 generate from f2", c4.filter_generate([3]), [1, 2, 3])
check("C4 Leibniz of [1,2,3]", c4.leibniz([1, 2, 3]), [[0], [1], [2], [3]])
check("C4 reduced", c4.is_reduced([1, 2, 3]), True)
flags = c4.rt_il_weml(2)
check("C4 il/weml flags", all(flags.values()), True)
check(
    "flag names",
    sorted(flags),
    ["greatest_proper_when_fsi", "il_ok", "least_is_fmeet", "weml_id"],
)

# Round-trip through the file format.
roundtrip = ROOT / "target" / "pymod" / "c4_roundtrip.alg"
roundtrip.write_text(c4.export())
check("export/load round-trip", aal_py.Algebra.load(str(roundtrip)).export(), c4.export())

# Heyting side: the fork poset fails KC, its 2-chain sub-case passes.
fork = aal_py.Poset.load(str(ROOT / "data" / "posets" / "fork.poset"))
h = fork.upsets()
check("fork upset algebra size", h.size, 5)
check("fork KC", h.kc()[0], False)
check("fork filter count", len(h.filters()), 5)
chain = aal_py.Poset.from_covers("chain2", 2, [(0, 1)])
check("2-chain KC", chain.upsets().kc(), (True, None))

# Lattice identities straight off a poset.
pentagon = aal_py.Poset.load(str(ROOT / "data" / "posets" / "pentagon.poset"))
holds, witness = pentagon.check("WEML_ID")
check("pentagon WEML_ID", holds, True)
holds, witness = pentagon.check("EML_ID")
check("pentagon EML_ID", (holds, witness), (False, [1, 2]))

# Modal side: the fork frame separates excluded middle from S4.
forkf = aal_py.Frame.load(str(ROOT / "data" / "frames" / "fork.frame"))
check("fork frame up-directed", forkf.up_directed, False)
report = aal_py.modal_report([forkf], nmax=2)
check("fork il_n", report["il_n"], 1)
check("fork weml", report["weml"], False)
check("fork s4", report["s4"], True)
check("fork crosscheck", report["crosscheck"], True)
twochain = aal_py.Frame.new("two_chain", 2, [(0, 1)], "preorder")
check("2-chain weml", aal_py.modal_report([twochain])["weml"], True)
check(
    "complex algebra is a modal algebra",
    all(ok for _, ok, _ in forkf.complex().validate()),
    True,
)

if failures:
    print(f"\n{len(failures)} check(s) failed")
    sys.exit(1)
print("\nall checks passed")
