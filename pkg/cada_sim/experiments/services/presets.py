"""
Hyper-parameter sets of the two logistic-regression benchmarks.

A config document names one with ``"preset": "covtype"``; the preset only
fills keys the document leaves out.
"""

_ADAM = {"beta1": 0.9, "beta2": 0.999}

BENCHMARK_PRESETS = {
    "covtype": {
        "batch_ratio": 0.001,
        "algorithms": {
            "adam": {"schedule": {"kind": "constant", "alpha": 0.005}, "adam": _ADAM},
            "cada1": {"schedule": {"kind": "constant", "alpha": 0.005}, "adam": _ADAM, "rule": {"D": 100, "d_max": 10}},
            "cada2": {"schedule": {"kind": "constant", "alpha": 0.005}, "adam": _ADAM, "rule": {"D": 100, "d_max": 10}},
            "lag": {"schedule": {"kind": "constant", "alpha": 0.1}, "server_update": "sgd", "rule": {"d_max": 10}},
            "local_momentum": {"schedule": {"kind": "constant", "alpha": 0.1}, "momentum": 0.9, "H": 10},
        },
    },
    "ijcnn1": {
        "batch_ratio": 0.01,
        "algorithms": {
            "adam": {"schedule": {"kind": "constant", "alpha": 0.01}, "adam": _ADAM},
            "cada1": {"schedule": {"kind": "constant", "alpha": 0.01}, "adam": _ADAM, "rule": {"D": 100, "d_max": 10}},
            "cada2": {"schedule": {"kind": "constant", "alpha": 0.01}, "adam": _ADAM, "rule": {"D": 100, "d_max": 10}},
            "lag": {"schedule": {"kind": "constant", "alpha": 0.1}, "server_update": "sgd", "rule": {"d_max": 10}},
            "local_momentum": {"schedule": {"kind": "constant", "alpha": 0.1}, "momentum": 0.9, "H": 20},
        },
    },
}


def preset_values(name: str, algorithm: str) -> dict:
    preset = BENCHMARK_PRESETS[name]
    values = dict(preset["algorithms"].get(algorithm, {}))
    values["batch_ratio"] = preset["batch_ratio"]
    return values
