#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
run_demos.py — recorrido completo por la CLI
--------------------------------------------
Ejecuta los ejemplos incluidos con el mismo intérprete, guarda los informes
en out/ y los reproduce. Cada paso declara el código de salida esperado.
"""

import subprocess
import sys
from pathlib import Path

print(f"🐍 Python en uso: {sys.executable}")

ROOT = Path(__file__).resolve().parent
MAIN = ROOT / "main.py"
OUT = ROOT / "out"

# (descripción, argumentos, código esperado)
STEPS = [
    ("Modismos", ["encode", "data/specs/idioms.yaml", "--table", "--out", "out/idioms.json"], 0),
    ("Coordinación ($)", ["encode", "data/specs/coordination.yaml", "--variant", "dollar", "--out", "out/coord.json"], 0),
    ("ND: 10x + y", ["fit", "data/samples/nd.yaml", "--out", "out/nd.json"], 0),
    ("DN: sin polinomio de grado 3", ["fit", "data/samples/dn.yaml", "--out", "out/dn.json"], 1),
    ("DN: tres valores", ["fit", "data/samples/dn_three_values.yaml", "--out", "out/dn3.json"], 1),
    ("DN al revés", ["fit", "data/samples/dn_backwards.yaml"], 0),
    ("Coordinación retorcida", ["fit", "data/samples/coord.yaml", "--out", "out/coord_fit.json"], 1),
    ("Refutación por grados", ["refute-dn", "--max-degree", "4", "--progress", "--out", "out/refute.json"], 0),
    ("Enumerador DN", ["enumerate", "--stream", "dn", "--row", "2", "--pair", "3"], 0),
    ("Replay modismos", ["replay", "out/idioms.json", "data/specs/idioms.yaml"], 0),
    ("Replay coordinación", ["replay", "out/coord.json", "data/specs/coordination.yaml", "--variant", "dollar"], 0),
    ("Replay DN", ["replay", "out/dn.json", "data/samples/dn.yaml"], 0),
    ("Replay refutación", ["replay", "out/refute.json", "data/specs/refute_dn.yaml"], 0),
]

print("🚀 Ejecutando demos del compositor...\n")
OUT.mkdir(exist_ok=True)

failed = 0
for title, args, expected in STEPS:
    print(f"▶️  {title}: main.py {' '.join(args)}")
    code = subprocess.run([sys.executable, str(MAIN), *args], cwd=ROOT).returncode
    if code == expected:
        print(f"✅  {title} (código {code})\n")
    else:
        print(f"❌  {title}: código {code}, se esperaba {expected}\n")
        failed += 1

if failed:
    print(f"⚠️  {failed} pasos no se comportaron como se esperaba.")
    sys.exit(1)
print("🎯  Demos completadas. Informes en out/")
