fn main() {
    // placeholder; filled in once the core library lands
}
