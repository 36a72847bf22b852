def pytest_configure(config):
    config.addinivalue_line("markers", "slow: カタログ全体を回す重いテスト（-m 'not slow' で除外）")
