"""Tests for pgx"""
