import os
import json

from ..core.config.defaults import DEFAULT_CACHE_DIR, DEFAULT_SEED, DEFAULT_WEIGHT_DECADES, DEFAULT_WORKERS

CONFIG_PATH = os.path.expanduser("~/.advicebench/config.json")

DEFAULT_CONFIG = {
    "workers": DEFAULT_WORKERS,
    "seed": DEFAULT_SEED,
    "weight_decades": DEFAULT_WEIGHT_DECADES,
    "cache_dir": DEFAULT_CACHE_DIR,
}

# environment variable -> config key
ENV_OVERRIDES = {
    "ADVICEBENCH_WORKERS": ("workers", int),
    "ADVICEBENCH_CACHE_DIR": ("cache_dir", str),
}


def load_config(path: str = None, with_env: bool = True):
    path = path or CONFIG_PATH
    cfg = DEFAULT_CONFIG.copy()
    if os.path.exists(path):
        with open(path, "r") as f:
            cfg.update(json.load(f))  # merge defaults
    for env, (key, cast) in (ENV_OVERRIDES.items() if with_env else ()):
        value = os.getenv(env)
        if value:
            cfg[key] = cast(value)
    return cfg


def save_config(cfg, path: str = None):
    path = path or CONFIG_PATH
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w") as f:
        json.dump(cfg, f, indent=2)
