"""Paquete compositor.

Codificación composicional μ de cualquier semántica sobre fragmentos finitos
de lenguaje, y decisión de semántica *sistemática* (restringida a una clase
de funciones) con certificados reproducibles.

Módulos:
    term            árboles de análisis, fragmentos y forma prefija
    encoder         sesiones μ, verificación, tabla explícita y enumerador
    grammars        numerales ND/DN, coordinación booleana, modismos
    systematicity   ajuste polinómico exacto y dependencia funcional
    certlib         informes, bundles canónicos y replay
    handlers        comandos de la CLI (ver main.py)
"""

__version__ = "0.4.0"

__all__ = [
    "term",
    "encoder",
    "grammars",
    "systematicity",
    "certlib",
    "handlers",
    "config",
    "errors",
    "generators",
    "texts",
    "meanings",
    "reports",
    "specs",
]
