"""Geometría riemanniana sobre Z_2^n-variedades."""
from gradedgeo.geometry.types import ChristoffelData, MetricTensor, OneForm, RiemannData, VectorField
from gradedgeo.geometry.metric import (
    lower_index,
    metric_pairing,
    raise_index,
    reduced_metric,
    validate_metric,
)
from gradedgeo.geometry.connection import (
    check_metric_compatibility,
    christoffel,
    connection_uniqueness_probe,
    covariant_derivative,
    koszul_check,
    lie_bracket,
    torsion,
    torsion_check,
)
from gradedgeo.geometry.curvature import (
    apply_curvature,
    bianchi_first,
    bianchi_second,
    curvature_operator,
    curvature_operator_check,
    curvature_trace_check,
    pairing_antisymmetry_check,
    ricci,
    ricci_cross_check,
    ricci_scalar,
    ricci_symmetry_check,
    ricci_unsymmetrized,
    riemann,
    riemann_antisymmetry_check,
)
from gradedgeo.geometry.calculus import (
    contracted_christoffel_check,
    divergence,
    divergence_product_check,
    gradient,
    gradient_defining_check,
    gradient_product_check,
    killing_bracket,
    killing_check,
    laplacian,
    leibniz_anomaly_check,
    lie_derivative_metric,
    odd_laplacian_check,
    probe_functions,
)
from gradedgeo.geometry.einstein import degree_report, einstein_check, scalar_constancy_check
