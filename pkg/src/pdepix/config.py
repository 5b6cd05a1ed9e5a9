"""Run configuration: flat key=value config files, typed option access,
and the PDE-name aliases shared by the CLI and the config format."""


class ConfigError(ValueError):
    """Bad or missing configuration (CLI exit code 2)."""


PDE_NAMES = ("heat", "laplace", "poisson", "wave", "transport", "pm",
             "burgers", "ch", "kdv", "ks", "liouville", "mh",
             "tikhonov", "tv")

PDE_ALIASES = {
    "perona_malik": "pm",
    "perona-malik": "pm",
    "cahn_hilliard": "ch",
    "cahn-hilliard": "ch",
    "maxwell": "mh",
    "maxwell_heaviside": "mh",
    "maxwell-heaviside": "mh",
    "kuramoto_sivashinsky": "ks",
    "kuramoto-sivashinsky": "ks",
    "korteweg_de_vries": "kdv",
    "bv": "burgers",
}


def canonical_pde(name: str) -> str:
    key = str(name).strip().lower()
    key = PDE_ALIASES.get(key, key)
    if key not in PDE_NAMES:
        raise ConfigError(f"unknown pde {name!r} (choose from {', '.join(PDE_NAMES)})")
    return key


def parse_config_file(path) -> dict:
    """Flat key=value lines; '#' starts a comment, blank lines are skipped."""
    options = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
            key, value = line.split("=", 1)
            key = key.strip()
            if not key:
                raise ConfigError(f"{path}:{lineno}: empty key")
            options[key] = value.strip()
    return options


_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def get_str(options: dict, key: str, default=None):
    value = options.get(key, default)
    return None if value is None else str(value)


def require_str(options: dict, key: str) -> str:
    value = get_str(options, key)
    if value is None:
        raise ConfigError(f"missing required option {key!r}")
    return value


def get_float(options: dict, key: str, default=None):
    value = options.get(key, default)
    if value is None:
        return None
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"option {key!r} must be a number, got {value!r}") from None


def get_int(options: dict, key: str, default=None):
    value = options.get(key, default)
    if value is None:
        return None
    try:
        return int(str(value), 10)
    except (TypeError, ValueError):
        raise ConfigError(f"option {key!r} must be an integer, got {value!r}") from None


def get_bool(options: dict, key: str, default=None):
    value = options.get(key, default)
    if value is None:
        return None
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in _TRUE:
        return True
    if text in _FALSE:
        return False
    raise ConfigError(f"option {key!r} must be a boolean, got {value!r}")


def collect_prefixed(options: dict, prefix: str) -> dict:
    """Sub-options under 'prefix.': {'pde.kappa': 0.1} -> {'kappa': 0.1}."""
    head = prefix + "."
    return {k[len(head):]: v for k, v in options.items() if k.startswith(head)}
