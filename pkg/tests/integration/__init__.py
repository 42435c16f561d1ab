"""Integration tests."""