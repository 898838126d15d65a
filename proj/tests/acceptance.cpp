#include <iostream>

int main() {
    std::cout << "acceptance stub\n";
    return 0;
}
