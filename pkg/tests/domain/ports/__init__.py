"""Tests for domain ports."""