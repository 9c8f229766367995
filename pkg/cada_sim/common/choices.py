from cada_sim.common.exceptions import ConfigError


def coerce_choice(enum_cls, value, *, what: str):
    """Turn a raw config string into its enum member."""
    try:
        return enum_cls(value)
    except ValueError:
        known = ", ".join(member.value for member in enum_cls)
        raise ConfigError(f"unknown {what} '{value}' (expected one of {known})") from None
