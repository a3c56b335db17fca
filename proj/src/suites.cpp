namespace fgb { namespace { int unused_suites = 0; } }
