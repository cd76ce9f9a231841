#include <doctest.h>

TEST_SUITE_BEGIN("experiments");

TEST_SUITE_END();
