int acceptance_placeholder_main(int, char**);
int main() { return 0; }
