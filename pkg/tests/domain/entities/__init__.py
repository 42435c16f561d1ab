"""Entity tests."""