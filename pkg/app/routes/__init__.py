"""Command modules; each exposes ``register(subparsers, common)``."""

from app.routes import classes, operators, transforms, verification

COMMAND_MODULES = (operators, transforms, classes, verification)
