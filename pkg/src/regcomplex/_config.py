"""Resource caps, overridable through environment variables."""
import os

_DEFAULTS = {
    "REGCOMPLEX_MAX_ELEMENTS": 1_000_000,
    "REGCOMPLEX_MAX_PRODUCT": 1_000_000,
    "REGCOMPLEX_MAX_FACES": 50_000,
    "REGCOMPLEX_MAX_IP_RANK": 8,
    "REGCOMPLEX_ISO_NODES": 5_000_000,
}


def cap(name):
    raw = os.environ.get(name)
    if raw is None:
        return _DEFAULTS[name]
    return int(raw)


def max_elements():
    """Largest group that will be enumerated element by element."""
    return cap("REGCOMPLEX_MAX_ELEMENTS")


def max_product():
    """Largest number of pairs |A|*|B| formed for an explicit product set."""
    return cap("REGCOMPLEX_MAX_PRODUCT")


def max_faces():
    return cap("REGCOMPLEX_MAX_FACES")


def max_ip_rank():
    return cap("REGCOMPLEX_MAX_IP_RANK")


def iso_nodes():
    return cap("REGCOMPLEX_ISO_NODES")
