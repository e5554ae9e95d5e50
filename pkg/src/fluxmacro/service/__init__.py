"""HTTP wrapper exposing the core computations as a small JSON API."""

from .app import app, create_app

__all__ = ["app", "create_app"]
