"""Query-driven news theme overviews.

Ingests tagged stories, groups them into themes, compresses each theme into
a micro-summary of at most 50 characters, and ranks themes by size weighted
with source diversity. Ships with an HTTP service, a CLI, and a TTL cache
for composed overviews.
"""

__version__ = "0.1.0"
