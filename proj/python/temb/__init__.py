"""Perfect t-embeddings of the uniformly weighted hexagon."""

from ._temb import (
    DomainError,
    closed_form_abd,
    critical_point,
    embed,
    embedding_svg,
    limit_theta,
    limit_z,
    verify,
)

__all__ = [
    "DomainError",
    "closed_form_abd",
    "critical_point",
    "embed",
    "embedding_svg",
    "limit_theta",
    "limit_z",
    "verify",
]
