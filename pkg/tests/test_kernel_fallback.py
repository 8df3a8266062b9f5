"""The kernels give identical answers with compilation disabled."""

from __future__ import annotations

import os
import subprocess
import sys

SCRIPT = """
import json, random, sys
from kregular.planarity import is_planar
from kregular._kernels import NUMBA_ENABLED

rng = random.Random(31337)
out = []
for _ in range(150):
    n = rng.randint(3, 10)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.4]
    out.append(int(is_planar(edges, n)))
print(json.dumps({"numba": NUMBA_ENABLED, "verdicts": out}))
"""


def _run(pure: bool) -> dict:
    env = dict(os.environ)
    if pure:
        env["KREGULAR_PURE"] = "1"
    else:
        env.pop("KREGULAR_PURE", None)
    proc = subprocess.run(
        [sys.executable, "-c", SCRIPT], capture_output=True, text=True, env=env
    )
    assert proc.returncode == 0, proc.stderr
    import json

    return json.loads(proc.stdout)


def test_pure_python_twin_agrees():
    compiled = _run(pure=False)
    plain = _run(pure=True)
    assert plain["numba"] is False
    assert compiled["verdicts"] == plain["verdicts"]
