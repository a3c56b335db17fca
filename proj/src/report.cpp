namespace fgb { namespace { int unused_report = 0; } }
