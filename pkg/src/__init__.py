"""Main package for pdcnet, a simulator of multi-crystal down-conversion interferometers."""
