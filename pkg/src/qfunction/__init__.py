"""Module qfunction"""
