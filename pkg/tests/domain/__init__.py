"""Domain layer tests."""