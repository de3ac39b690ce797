"""Bit-exact corpus runner, differential fuzzer and expression evaluator."""
