"""
gradedgeo: geometría riemanniana simbólica sobre Z_2^n-variedades.

Subpaquetes:
- symkernel: expresiones, cartas y series graduadas truncadas
- geometry: métrica, conexión de Levi-Civita, curvatura y cálculo
"""
__version__ = "0.1.0"
