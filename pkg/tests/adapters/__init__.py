"""Adapter tests."""