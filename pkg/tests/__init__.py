"""Tests for reglab."""
