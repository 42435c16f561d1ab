"""Tests for driving adapters."""