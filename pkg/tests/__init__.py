"""Tests for gridstress."""
