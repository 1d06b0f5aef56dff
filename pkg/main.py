#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
main.py — CLI del compositor
----------------------------
    python main.py encode data/specs/idioms.yaml
    python main.py encode data/specs/coordination.yaml --variant dollar --table
    python main.py fit data/samples/nd.yaml --class poly2 --degree 1
    python main.py fit data/samples/coord.yaml --class boolfun
    python main.py refute-dn --max-degree 4
    python main.py enumerate data/specs/idioms.yaml --row 2 --pair 1
    python main.py enumerate --stream dn --row 2 --pair 3
    python main.py replay out/idioms.json data/specs/idioms.yaml

Códigos de salida: 0 éxito, 1 resultado negativo, 2 entrada no válida,
3 E/S o límite de recursos.
"""

import argparse
import sys

from compositor import __version__, handlers


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="Guardar el informe canónico (JSON) en esta ruta")
    p.add_argument("--format", dest="fmt", choices=["human", "machine"], default="human",
                   help="Salida por pantalla: texto o bundle canónico")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="compositor", description="μ composicional y certificados de sistematicidad")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="Construye μ y verifica todas sus ecuaciones")
    p.add_argument("spec", help="Especificación de lenguaje (YAML/JSON)")
    p.add_argument("--variant", choices=["plain", "dollar"])
    p.add_argument("--table", action="store_true", help="Incluir la tabla explícita de μ")
    _add_output(p)

    p = sub.add_parser("fit", help="Ajusta una clase de funciones a unas muestras")
    p.add_argument("samples", help="Fichero de muestras (YAML/JSON)")
    p.add_argument("--class", dest="cls", help="poly2 | boolfun")
    p.add_argument("--degree", type=int)
    p.add_argument("--budget", type=int, help="Número de puntos que fijan el interpolante")
    _add_output(p)

    p = sub.add_parser("refute-dn", help="Refuta la semántica polinómica de DN grado a grado")
    p.add_argument("--max-degree", type=int)
    p.add_argument("--grammar", choices=["nd", "dn"], help="nd sirve de control")
    p.add_argument("--spec", dest="spec", help="Especificación de refutación opcional")
    p.add_argument("--progress", action="store_true")
    _add_output(p)

    p = sub.add_parser("enumerate", help="Un par concreto de la tabla de μ")
    p.add_argument("spec", nargs="?", help="Especificación de lenguaje")
    p.add_argument("--stream", choices=["nd", "dn"], help="Flujo infinito de numerales")
    p.add_argument("--row", type=int, required=True)
    p.add_argument("--pair", type=int, required=True)
    p.add_argument("--variant", choices=["plain", "dollar"])
    p.add_argument("--format", dest="fmt", choices=["human", "machine"], default="human")

    p = sub.add_parser("replay", help="Reproduce un informe guardado")
    p.add_argument("bundle")
    p.add_argument("spec")
    p.add_argument("--variant", choices=["plain", "dollar"])
    p.add_argument("--class", dest="cls")
    p.add_argument("--degree", type=int)
    p.add_argument("--budget", type=int)
    p.add_argument("--grammar", choices=["nd", "dn"])
    p.add_argument("--max-degree", type=int)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "encode":
        return handlers.cmd_encode(args.spec, args.variant, args.table, args.out, args.fmt)
    if args.command == "fit":
        return handlers.cmd_fit(args.samples, args.cls, args.degree, args.budget, args.out, args.fmt)
    if args.command == "refute-dn":
        return handlers.cmd_refute_dn(args.max_degree, args.grammar, args.spec, args.progress, args.out, args.fmt)
    if args.command == "enumerate":
        return handlers.cmd_enumerate(args.spec, args.stream, args.row, args.pair, args.variant, args.fmt)
    return handlers.cmd_replay(args.bundle, args.spec, args.variant, args.cls, args.degree, args.budget,
                               args.grammar, args.max_degree)


if __name__ == "__main__":
    sys.exit(main())
