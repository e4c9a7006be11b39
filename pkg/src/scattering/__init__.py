"""Matching solver, observables and the regularized oracle."""
