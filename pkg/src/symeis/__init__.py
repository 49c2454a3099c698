"""symeis: word algebras, multiple Eisenstein q-series, shuffle spaces, relations."""

__version__ = "0.1.0"
