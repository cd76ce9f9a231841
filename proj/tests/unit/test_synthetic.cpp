#include <doctest.h>

TEST_SUITE_BEGIN("synthetic");

TEST_SUITE_END();
