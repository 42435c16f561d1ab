import pytest


@pytest.fixture(autouse=True)
def quiet_logger():
    from src.utils import logger

    logger.set_verbose(False)
    yield
    logger.set_verbose(False)


def test_info_prints_to_stderr_with_prefix(capsys):
    from src.utils import logger

    logger.info("hello")
    captured = capsys.readouterr()
    assert captured.err == "[Circulant-Differentiator] hello\n"
    assert captured.out == ""


def test_error_prints_to_stderr_with_prefix(capsys):
    from src.utils import logger

    logger.error("oops")
    captured = capsys.readouterr()
    assert captured.err == "[Circulant-Differentiator] ERROR: oops\n"
    assert captured.out == ""


def test_warn_is_labelled(capsys):
    from src.utils import logger

    logger.warn("skipped quartic_centered")
    captured = capsys.readouterr()
    assert captured.err == "[Circulant-Differentiator] WARNING: skipped quartic_centered\n"


def test_variadic_args_joined_with_space(capsys):
    from src.utils import logger

    logger.info("a", 1, "b")
    captured = capsys.readouterr()
    assert captured.err == "[Circulant-Differentiator] a 1 b\n"


def test_custom_sep_and_end(capsys):
    from src.utils import logger

    logger.log("x", "y", "z", sep="-", end="END")
    captured = capsys.readouterr()
    assert captured.err == "[Circulant-Differentiator] x-y-zEND"


def test_explicit_stream_is_honoured(capsys):
    import sys
    from src.utils import logger

    logger.log("to stdout", file=sys.stdout)
    captured = capsys.readouterr()
    assert captured.out == "[Circulant-Differentiator] to stdout\n"


def test_debug_is_silent_unless_verbose(capsys):
    from src.utils import logger

    logger.debug("hidden")
    assert capsys.readouterr().err == ""

    logger.set_verbose(True)
    logger.debug("shown")
    assert capsys.readouterr().err == "[Circulant-Differentiator] DEBUG: shown\n"


def test_prefix_constant():
    from src.utils import logger

    assert logger.PREFIX == "[Circulant-Differentiator]"
