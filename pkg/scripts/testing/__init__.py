"""Test package for residue-futaki."""
