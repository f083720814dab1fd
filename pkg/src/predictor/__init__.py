"""Module predictor"""
