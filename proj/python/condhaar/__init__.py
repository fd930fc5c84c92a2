"""Haar and conditional Haar measures on classical compact groups as products
of independent reflections, with exact product representations for the
characteristic-polynomial derivative statistics and a statistical
verification harness."""

import json as _json

try:  # installed package layout
    from ._condhaar import *  # noqa: F401,F403
    from ._condhaar import list_experiments, run_experiment_json as _run_experiment_json
except ImportError:  # build-tree layout (extension on sys.path directly)
    from _condhaar import *  # noqa: F401,F403
    from _condhaar import list_experiments, run_experiment_json as _run_experiment_json  # noqa: F401


def run_experiment(experiment_id, params=None, seed=42, threads=1):
    """Run a named verification experiment and return its report as a dict."""
    payload = _json.dumps(params or {})
    return _json.loads(_run_experiment_json(experiment_id, payload, seed, threads))
