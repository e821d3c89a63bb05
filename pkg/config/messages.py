"""
Message Templates
Error texts, log lines and report notes shared by all modules
"""

# Error Messages
ERROR_MESSAGES = {
    "not_square": "Matrix must be square, got shape {shape}",
    "odd_dimension": "Matrix dimension must be even (2N), got {dim}",
    "dimension_mismatch": "Expected a {expected}x{expected} matrix for {n_modes} modes, got {shape}",
    "non_finite": "Matrix contains NaN or infinite entries",
    "asymmetric_matrix": "Matrix asymmetry {asymmetry:.3e} exceeds tolerance {tolerance:.3e}",
    "ordering_mismatch": "Ordering mismatch: {left} vs {right}",
    "partition_required": "Ordering '{ordering}' requires a bipartition",
    "partition_unbalanced": "Ordering '{ordering}' requires equal A/B mode counts, got {n_a}|{n_b}",
    "partition_empty": "Party B must be a non-empty proper subset of modes 0..{last}, got {modes}",
    "partition_out_of_range": "Mode index {mode} out of range for {n_modes} modes",
    "negative_mode": "Mode indices must be >= 0, got {mode}",
    "unphysical_state": "State violates the uncertainty relation: min eigenvalue {min_eigenvalue:.6e} < -{tol:.3e}",
    "degenerate_spectrum": "Degenerate eigenvalues at positions {i} and {j} (value {value!r})",
    "negative_parameter": "Parameter '{name}' must be >= 0, got {value}",
    "invalid_ratio": "Aspect ratio r must lie in (0, 1], got {r}",
    "wishart_shape": "Wishart sampling needs 1 <= m <= n, got m={m}, n={n}",
    "invalid_seed": "Seed must be a 64-bit unsigned integer, got {seed}",
    "probability_range": "Probability must lie in [0, 1], got {p}",
    "unknown_kind": "Unknown state kind '{kind}'",
    "ensemble_item": "Ensemble item must look like KIND:COUNT, got '{item}'",
    "mean_length": "Mean vector must have length {expected}, got {length}",
}

# Log Messages
LOG_MESSAGES = {
    "criterion_ready": "{name} initialized",
    "simon_result": "Simon check on {n_modes} modes (B={partition}): verdict={verdict}, min_eig={min_eigenvalue:.6e}, regime={regime}",
    "mp_result": "MP check on {n_modes} modes: verdict={verdict}, violations={violations}, ks={ks:.4f}",
    "ensemble_start": "Generating ensemble kind={kind} n_states={n_states} seed={seed}",
    "compare_start": "Comparing criteria on {n_states} states across {n_ensembles} ensemble(s)",
    "compare_done": "Comparison complete: agreement={agreement:.2%}, disagreements={disagreements}",
    "wishart_sampled": "Sampled Wishart spectrum m={m} n={n} seed={seed}",
    "command_start": "Running command '{command}'",
    "command_done": "Command '{command}' finished with exit code {exit_code}",
    "run_logged": "Recorded run {run_id} in {path}",
    "generated_seed": "No seed given, drew seed {seed} from OS entropy",
}

# Report Notes
REPORT_NOTES = {
    "exact": "PPT is necessary and sufficient for this 1 x n mode bipartition",
    "necessary_only": "PPT is only necessary for this {n_a} x {n_b} mode bipartition; a Separable verdict does not certify separability",
    "boundary": "State lies within tolerance of the PPT boundary",
    "finite_size": "Support test applied to a finite spectrum of {dim} eigenvalues; the Marchenko-Pastur law is an asymptotic statement",
}
