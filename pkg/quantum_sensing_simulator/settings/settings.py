import json


class Settings:
    """Global settings to be imported by all modules of the quantum sensing simulator.

    Frequencies are angular (rad/us), times are in us, angles in rad unless the key says otherwise.
    """

    _settings = {
        # physical constants of the NV electron / nitrogen nuclear spin pair
        "hyperfine_mhz": -2.16,
        "hyperfine_splitting_mhz": 2.16,
        # sequential control
        "dwell_ns": 30.0,
        "control_omega_mhz": 11.2,
        "control_delta_mhz": 0.0,
        "control_phi_deg": 90.0,
        "polarization": 0.85,
        "spam_zeta": 0.20,
        "spam_gamma": 0.15,
        "spam_eta": 0.025,
        "averaged_sigma": 0.02,
        "projection_shots": 3_000_000,
        "scaling_n_values": [1, 2, 4, 8, 16],
        # numerical tolerances
        "hermitian_tolerance": 1e-10,
        "unitary_tolerance": 1e-9,
        "trace_tolerance": 1e-9,
        "positivity_tolerance": 1e-9,
        "probability_tolerance": 1e-9,
        "fd_step": 1e-5,
        "qfim_pair_threshold": 1e-12,
        "cfim_outcome_threshold": 1e-12,
        # bound on the column-equilibrated condition number of a Jacobian
        "singular_condition_limit": 1e6,
        # rotation optimizer
        "optimizer_starts": 20,
        "optimizer_xatol": 1e-11,
        "optimizer_fatol": 1e-12,
        "optimizer_spread_tolerance": 1e-10,
        "optimizer_max_iterations": 20000,
        # experiments
        "map_grid_size": 64,
        "map_alpha": 0.7853981633974483,
        "map_beta": 0.7853981633974483,
        "csv_significant_digits": 12,
        "thread_count_variable": "QSENSIM_THREADS",
    }

    def get_JSON(self) -> str:
        """Returns a JSON string of the settings."""
        return json.dumps(self._settings)

    def get(self) -> dict:
        """Returns the settings as a dict."""
        return self._settings
