"""Exact invariants of ladder determinantal rings."""
