"""
Services package.

This package contains the exact and numeric operators organized by domain.
"""
