"""Tests for driven adapters."""