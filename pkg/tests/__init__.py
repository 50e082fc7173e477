"""Tests for the akverify package."""
