"""HTTP service exposing the engine's command handlers."""

from .app import create_app

__all__ = ["create_app"]
