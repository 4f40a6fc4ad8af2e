# Spectral verification: normalized spectra, perturbation, conductance, mixing
from .matrices import (
    NormalizedMatrix, DiagonalPerturbation, WeylCheck, normalized_adjacency,
    normalized_from_matrix, eigenvalues, lambda2, second_eigenvalue,
    regularization_perturbation, weyl_shift_check, conductance_exact,
)
from .mixing import (
    mixing_bounds_from_gap, mixing_time_empirical, worst_case_deviations,
    edge_states, edge_transition_matrix, edge_walk_distribution,
    distribution_deviation, default_tolerance,
)
from .concentration import (
    DegreeConcentration, HoffmanFit, chernoff_upper, chernoff_lower, chernoff_two_sided,
    chernoff_degree_check, degree_check_probability, hoffman_constant, fit_hoffman_constants,
)
from .report import SpectralReport, spectral_report

__all__ = [
    'NormalizedMatrix', 'DiagonalPerturbation', 'WeylCheck', 'normalized_adjacency',
    'normalized_from_matrix', 'eigenvalues', 'lambda2', 'second_eigenvalue',
    'regularization_perturbation', 'weyl_shift_check', 'conductance_exact',
    'mixing_bounds_from_gap', 'mixing_time_empirical', 'worst_case_deviations',
    'edge_states', 'edge_transition_matrix', 'edge_walk_distribution',
    'distribution_deviation', 'default_tolerance', 'DegreeConcentration', 'HoffmanFit',
    'chernoff_upper', 'chernoff_lower', 'chernoff_two_sided', 'chernoff_degree_check',
    'degree_check_probability', 'hoffman_constant', 'fit_hoffman_constants', 'SpectralReport',
    'spectral_report',
]
