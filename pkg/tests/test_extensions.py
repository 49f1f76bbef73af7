import logging

from simpson_nd.extensions import Settings


def test_settings_read_the_environment():
    settings = Settings.from_env({"SIMPSON_ND_FORMAT": " JSON ", "SIMPSON_ND_WORKERS": "4", "SIMPSON_ND_LOG_LEVEL": "info"})
    assert settings.output_format == "json"
    assert settings.workers == 4
    assert settings.log_level == "INFO"


def test_defaults_without_environment():
    assert Settings.from_env({}) == Settings()


def test_invalid_worker_counts_fall_back_to_one_with_a_warning(caplog):
    for raw in ("many", "0", "-3"):
        caplog.clear()
        with caplog.at_level(logging.WARNING, logger="simpson_nd"):
            assert Settings.from_env({"SIMPSON_ND_WORKERS": raw}).workers == 1
        assert f"SIMPSON_ND_WORKERS={raw!r}" in caplog.text
