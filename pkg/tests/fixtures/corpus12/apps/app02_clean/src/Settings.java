package com.example.clean;

public class Settings {
    boolean sound = true;

    void toggleSound() {
        sound = !sound;
    }
}
