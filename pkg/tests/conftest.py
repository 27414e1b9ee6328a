# Keeps the tests directory on sys.path so test modules can import _gen.
