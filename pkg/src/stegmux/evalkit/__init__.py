"""Benchmark toolkit: fidelity metrics, channel attacks, reference corpus,
and the adaptive-vs-static experiment runner."""

from .attacks import AttackSpec, attack_audio, attack_image, attack_text
from .corpus import generate_corpus
from .experiment import ExperimentReport, StrategyResult, run_experiment
from .metrics import ber, psnr, snr

__all__ = [
    "AttackSpec", "attack_audio", "attack_image", "attack_text",
    "generate_corpus",
    "ExperimentReport", "StrategyResult", "run_experiment",
    "ber", "psnr", "snr",
]
